//! Resolvent evaluation `J_{γA} = (Id + γA)^{-1}` for the operators used by the lifts
//! and solvers.

use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DVector, Dyn, LU};

use crate::error::{check_dim, check_finite, check_positive, Result, SplitError};
use crate::sets::{prox_distance_into, Projector};
use crate::vector::Vector;

/// A maximally monotone operator accessed through its resolvent.
///
/// `resolve_into` is the unchecked hot path used inside solver loops; `gamma` is
/// positive and `x`, `out` have length `dim()`.
pub trait Resolvent: Send + Sync {
    fn dim(&self) -> usize;

    fn resolve_into(&self, gamma: f64, x: &[f64], out: &mut [f64]);

    /// Full resolvent set when it is finite and may hold more than one point
    /// (projectors onto finite sets). `None` means single-valued.
    fn resolve_all(&self, _gamma: f64, _x: &[f64]) -> Option<Vec<Vec<f64>>> {
        None
    }

    fn resolve(&self, gamma: f64, x: &Vector) -> Result<Vector> {
        check_positive("gamma", gamma)?;
        check_dim(self.dim(), x.dim())?;
        let mut out = vec![0.0; x.dim()];
        self.resolve_into(gamma, x, &mut out);
        check_finite(&out)?;
        Ok(Vector::from_raw(out))
    }
}

/// Shared handle to an operator.
pub type Operator = Arc<dyn Resolvent>;

/// Normal cone `N_C` of a set; its resolvent is the projector onto `C` for every γ.
#[derive(Debug, Clone)]
pub struct NormalCone<P>(pub P);

impl<P: Projector> Resolvent for NormalCone<P> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn resolve_into(&self, _gamma: f64, x: &[f64], out: &mut [f64]) {
        self.0.project_into(x, out);
    }

    fn resolve_all(&self, _gamma: f64, x: &[f64]) -> Option<Vec<Vec<f64>>> {
        let all = self.0.project_all(x);
        (all.len() > 1).then_some(all)
    }
}

/// Subdifferential of the distance function `d_C` to a closed convex set.
#[derive(Debug, Clone)]
pub struct DistanceSubdifferential<P>(pub P);

impl<P: Projector> Resolvent for DistanceSubdifferential<P> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn resolve_into(&self, gamma: f64, x: &[f64], out: &mut [f64]) {
        prox_distance_into(&self.0, gamma, x, out);
    }
}

/// The zero operator; its resolvent is the identity.
#[derive(Debug, Clone, Copy)]
pub struct ZeroOperator {
    pub dim: usize,
}

impl Resolvent for ZeroOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn resolve_into(&self, _gamma: f64, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(x);
    }
}

type Factorization = LU<f64, Dyn, Dyn>;

/// Affine operator `A(x) = M x + b` with `M` monotone (`<x, Mx> >= 0`).
///
/// LU factorizations of `Id + γM` are cached per γ.
pub struct AffineOperator {
    matrix: DMatrix<f64>,
    offset: DVector<f64>,
    cache: Mutex<Vec<(u64, Arc<Factorization>)>>,
}

impl std::fmt::Debug for AffineOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AffineOperator")
            .field("matrix", &self.matrix)
            .field("offset", &self.offset)
            .finish()
    }
}

impl Clone for AffineOperator {
    fn clone(&self) -> Self {
        AffineOperator::from_parts(self.matrix.clone(), self.offset.clone())
    }
}

impl AffineOperator {
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(SplitError::InvalidParameter {
                name: "matrix",
                reason: format!("must be square, got {}x{}", matrix.nrows(), matrix.ncols()),
            });
        }
        check_dim(matrix.nrows(), offset.len())?;
        check_finite(matrix.as_slice())?;
        check_finite(offset.as_slice())?;
        Ok(AffineOperator::from_parts(matrix, offset))
    }

    /// `A(x) = s·x`.
    pub fn scaled_identity(dim: usize, s: f64) -> Result<Self> {
        AffineOperator::new(DMatrix::identity(dim, dim) * s, DVector::zeros(dim))
    }

    fn from_parts(matrix: DMatrix<f64>, offset: DVector<f64>) -> Self {
        AffineOperator {
            matrix,
            offset,
            cache: Mutex::new(Vec::new()),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn offset(&self) -> &DVector<f64> {
        &self.offset
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let y = &self.matrix * DVector::from_column_slice(x) + &self.offset;
        y.as_slice().to_vec()
    }

    fn factor(&self, gamma: f64) -> Arc<LU<f64, Dyn, Dyn>> {
        let key = gamma.to_bits();
        let mut cache = self.cache.lock().expect("affine cache poisoned");
        if let Some((_, lu)) = cache.iter().find(|(k, _)| *k == key) {
            return Arc::clone(lu);
        }
        let n = self.matrix.nrows();
        let lu = Arc::new((DMatrix::identity(n, n) + &self.matrix * gamma).lu());
        cache.push((key, Arc::clone(&lu)));
        lu
    }
}

impl Resolvent for AffineOperator {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn resolve_into(&self, gamma: f64, x: &[f64], out: &mut [f64]) {
        let rhs = DVector::from_column_slice(x) - &self.offset * gamma;
        // Id + γM is invertible for monotone M
        match self.factor(gamma).solve(&rhs) {
            Some(p) => out.copy_from_slice(p.as_slice()),
            None => out.fill(f64::NAN),
        }
    }
}

/// Solves `(Id + c·ΣM_i) p = x − c·Σb_i`, the resolvent of `c·ΣA_i` for affine `A_i`.
pub fn affine_sum_resolvent(ops: &[&AffineOperator], c: f64, x: &Vector) -> Result<Vector> {
    check_positive("scale", c)?;
    let n = x.dim();
    let mut lhs = DMatrix::identity(n, n);
    let mut rhs = DVector::from_column_slice(x);
    for op in ops {
        check_dim(n, op.dim())?;
        lhs += &op.matrix * c;
        rhs -= &op.offset * c;
    }
    let p = lhs.lu().solve(&rhs).ok_or(SplitError::Singular)?;
    Vector::new(p.as_slice().to_vec()).map_err(|_| SplitError::Singular)
}
