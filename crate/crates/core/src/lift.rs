//! Product-space lifts of an r-operator inclusion `0 ∈ A_1 x + ... + A_r x`.
//!
//! * [`StandardLift`] works in `H^r` with the product operator `A_1 × ... × A_r`
//!   and the diagonal subspace `D_r`.
//! * [`ReducedLift`] works in `H^{r-1}`: `B = A_1 × ... × A_{r-1}` and
//!   `K = (1/(r-1))(A_r × ... × A_r) + N_{D_{r-1}}`, so `A_r` is merged into the
//!   diagonal constraint. The resolvent of `K` needs only one evaluation of
//!   `J_{γ/(r-1) A_r}` at the block mean.
//!
//! The caller decides which operator sits last (and therefore inside `K`); lifts never
//! reorder their operators.

use crate::error::{check_dim, check_positive, Result, SplitError};
use crate::resolvent::{affine_sum_resolvent, AffineOperator, Operator};
use crate::sets::Projector;
use crate::vector::{BlockVector, Vector};

/// Projection onto the diagonal: every block becomes the mean of all blocks.
pub fn diagonal_project(x: &BlockVector) -> BlockVector {
    if x.is_diagonal() {
        return x.clone();
    }
    BlockVector::diagonal(&x.mean(), x.block_count())
}

fn check_blocks(expected: usize, x: &BlockVector) -> Result<()> {
    if x.block_count() != expected {
        return Err(SplitError::BlockCount {
            expected,
            found: x.block_count(),
        });
    }
    Ok(())
}

fn common_dim(ops: &[Operator]) -> Result<usize> {
    let dim = ops.first().ok_or(SplitError::Empty("operator list"))?.dim();
    for op in ops {
        check_dim(dim, op.dim())?;
    }
    Ok(dim)
}

/// Pierra's lift: componentwise operators on `H^r` plus the diagonal normal cone.
#[derive(Clone)]
pub struct StandardLift {
    operators: Vec<Operator>,
    dim: usize,
}

impl StandardLift {
    pub fn new(operators: Vec<Operator>) -> Result<Self> {
        let dim = common_dim(&operators)?;
        Ok(StandardLift { operators, dim })
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    /// Number of operators `r`.
    pub fn count(&self) -> usize {
        self.operators.len()
    }

    pub fn base_dim(&self) -> usize {
        self.dim
    }

    /// `J_{γA}(x) = (J_{γA_1}(x_1), ..., J_{γA_r}(x_r))`.
    pub fn resolvent(&self, gamma: f64, x: &BlockVector) -> Result<BlockVector> {
        check_positive("gamma", gamma)?;
        check_blocks(self.count(), x)?;
        check_dim(self.dim, x.block_dim())?;
        let blocks = self
            .operators
            .iter()
            .zip(x.blocks())
            .map(|(op, xi)| op.resolve(gamma, xi))
            .collect::<Result<Vec<_>>>()?;
        BlockVector::new(blocks)
    }
}

/// Reduced-dimension lift on `H^{r-1}`.
#[derive(Clone)]
pub struct ReducedLift {
    b_operators: Vec<Operator>,
    k_operator: Operator,
    dim: usize,
}

impl ReducedLift {
    /// Splits `operators` into `B` (all but the last) and `K` (built from the last).
    pub fn new(mut operators: Vec<Operator>) -> Result<Self> {
        if operators.len() < 2 {
            return Err(SplitError::InvalidParameter {
                name: "operators",
                reason: format!(
                    "reduced lift needs at least 2 operators, got {}",
                    operators.len()
                ),
            });
        }
        let dim = common_dim(&operators)?;
        let k_operator = operators.pop().expect("length checked above");
        Ok(ReducedLift {
            b_operators: operators,
            k_operator,
            dim,
        })
    }

    /// Number of operators `r` (so the product space has `r - 1` blocks).
    pub fn count(&self) -> usize {
        self.b_operators.len() + 1
    }

    pub fn block_count(&self) -> usize {
        self.b_operators.len()
    }

    pub fn base_dim(&self) -> usize {
        self.dim
    }

    pub fn b_operators(&self) -> &[Operator] {
        &self.b_operators
    }

    pub fn k_operator(&self) -> &Operator {
        &self.k_operator
    }

    /// Every operator, `A_r` last.
    pub fn operators(&self) -> Vec<Operator> {
        let mut ops = self.b_operators.clone();
        ops.push(self.k_operator.clone());
        ops
    }

    fn check_input(&self, gamma: f64, x: &BlockVector) -> Result<()> {
        check_positive("gamma", gamma)?;
        check_blocks(self.block_count(), x)?;
        check_dim(self.dim, x.block_dim())
    }

    /// `J_{γB}(x) = (J_{γA_1}(x_1), ..., J_{γA_{r-1}}(x_{r-1}))`.
    pub fn resolvent_b(&self, gamma: f64, x: &BlockVector) -> Result<BlockVector> {
        self.check_input(gamma, x)?;
        let blocks = self
            .b_operators
            .iter()
            .zip(x.blocks())
            .map(|(op, xi)| op.resolve(gamma, xi))
            .collect::<Result<Vec<_>>>()?;
        BlockVector::new(blocks)
    }

    /// `J_{γK}(x) = j_{r-1}(J_{γ/(r-1) A_r}(mean(x)))`.
    pub fn resolvent_k(&self, gamma: f64, x: &BlockVector) -> Result<BlockVector> {
        self.check_input(gamma, x)?;
        let m = self.block_count() as f64;
        let p = self.k_operator.resolve(gamma / m, &x.mean())?;
        Ok(BlockVector::diagonal(&p, self.block_count()))
    }

    /// `J_{(γ/(r-1)) A_r}` evaluated at `point` into `out`; the inner step of `J_{γK}`.
    pub(crate) fn k_step_into(&self, gamma: f64, point: &[f64], out: &mut [f64]) {
        let m = self.block_count() as f64;
        self.k_operator.resolve_into(gamma / m, point, out);
    }
}

/// All points of `P_K(x)` for `K = {(c, ..., c) : c ∈ C_r}` with `C_r` proximinal.
///
/// Equals `{ j_{r-1}(p) : p ∈ P_{C_r}(mean(x)) }`. For sets whose projector is
/// single-valued the result is a singleton.
pub fn project_k_nonconvex<P: Projector + ?Sized>(
    c_r: &P,
    x: &BlockVector,
) -> Result<Vec<BlockVector>> {
    check_dim(c_r.dim(), x.block_dim())?;
    let mean = x.mean();
    Ok(c_r
        .project_all(&mean)
        .into_iter()
        .map(|p| BlockVector::diagonal(&Vector::from_raw(p), x.block_count()))
        .collect())
}

/// `J_{(γ/(r-1)) Σ A_i}(x)` for affine operators `A_1, ..., A_r` (given in lift order).
///
/// This is the diagonal value of `J_{γ(B+K)}` at `j_{r-1}(x)`.
pub fn resolvent_sum_reduced(ops: &[&AffineOperator], gamma: f64, x: &Vector) -> Result<Vector> {
    check_positive("gamma", gamma)?;
    if ops.len() < 2 {
        return Err(SplitError::InvalidParameter {
            name: "operators",
            reason: format!("reduced lift needs at least 2 operators, got {}", ops.len()),
        });
    }
    affine_sum_resolvent(ops, gamma / (ops.len() - 1) as f64, x)
}
