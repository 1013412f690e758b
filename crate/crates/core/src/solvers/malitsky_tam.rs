use crate::error::{check_dim, Result, SplitError};
use crate::resolvent::Operator;
use crate::vector::{BlockVector, Vector};

use super::{drive, to_vectors, Iteration, SolverConfig, SolverTrace};

/// Malitsky–Tam frugal splitting with (r−1)-fold lifting.
///
/// ```text
/// x_1 = J_{γA_1}(z_1)
/// x_i = J_{γA_i}(z_i - z_{i-1} + x_{i-1}),   i = 2..r-1
/// x_r = J_{γA_r}(x_1 + x_{r-1} - z_{r-1})
/// z_i += λ (x_{i+1} - x_i),                 i = 1..r-1
/// ```
///
/// The monitored point is `x_r`.
pub struct MalitskyTam {
    ops: Vec<Operator>,
    gamma: f64,
    lambda: f64,
    z: Vec<Vec<f64>>,
    x: Vec<Vec<f64>>,
    scratch: Vec<f64>,
    last_step: f64,
}

impl MalitskyTam {
    pub fn new(ops: &[Operator], cfg: &SolverConfig, z0: &BlockVector) -> Result<Self> {
        cfg.validate()?;
        cfg.validate_lambda_in(1.0, false)?;
        if ops.len() < 2 {
            return Err(SplitError::InvalidParameter {
                name: "operators",
                reason: format!("need at least 2 operators, got {}", ops.len()),
            });
        }
        let n = ops[0].dim();
        for op in ops {
            check_dim(n, op.dim())?;
        }
        if z0.block_count() != ops.len() - 1 {
            return Err(SplitError::BlockCount {
                expected: ops.len() - 1,
                found: z0.block_count(),
            });
        }
        check_dim(n, z0.block_dim())?;
        let mut it = MalitskyTam {
            ops: ops.to_vec(),
            gamma: cfg.gamma,
            lambda: cfg.lambda,
            z: z0.blocks().iter().map(|b| b.to_vec()).collect(),
            x: vec![vec![0.0; n]; ops.len()],
            scratch: vec![0.0; n],
            last_step: 0.0,
        };
        it.evaluate();
        Ok(it)
    }

    fn evaluate(&mut self) {
        let g = self.gamma;
        let r = self.ops.len();
        self.ops[0].resolve_into(g, &self.z[0], &mut self.x[0]);
        for i in 1..r - 1 {
            for (j, s) in self.scratch.iter_mut().enumerate() {
                *s = self.z[i][j] - self.z[i - 1][j] + self.x[i - 1][j];
            }
            self.ops[i].resolve_into(g, &self.scratch, &mut self.x[i]);
        }
        for (j, s) in self.scratch.iter_mut().enumerate() {
            *s = self.x[0][j] + self.x[r - 2][j] - self.z[r - 2][j];
        }
        self.ops[r - 1].resolve_into(g, &self.scratch, &mut self.x[r - 1]);
    }

    pub fn run(self, cfg: &SolverConfig) -> SolverTrace {
        drive(self, cfg, |_| false)
    }
}

impl Iteration for MalitskyTam {
    fn shadow(&self) -> &[f64] {
        &self.x[self.ops.len() - 1]
    }

    fn step(&mut self) {
        let mut sq = 0.0;
        for i in 0..self.z.len() {
            for j in 0..self.scratch.len() {
                let d = self.lambda * (self.x[i + 1][j] - self.x[i][j]);
                self.z[i][j] += d;
                sq += d * d;
            }
        }
        self.last_step = sq.sqrt();
        self.evaluate();
    }

    fn state(&self) -> Vec<Vector> {
        to_vectors(&self.z)
    }

    fn state_step(&self) -> f64 {
        self.last_step
    }
}

/// Runs Malitsky–Tam for `ops = [A_1, ..., A_r]` from `z0` (r−1 blocks).
pub fn malitsky_tam_run(
    ops: &[Operator],
    cfg: &SolverConfig,
    z0: &BlockVector,
) -> Result<SolverTrace> {
    Ok(MalitskyTam::new(ops, cfg, z0)?.run(cfg))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::resolvent::{NormalCone, ZeroOperator};
    use crate::sets::BoxSet;

    fn interval(lo: f64, hi: f64) -> Operator {
        Arc::new(NormalCone(BoxSet::interval(lo, hi).unwrap()))
    }

    #[test]
    fn zero_operators_reach_consensus() {
        let zero: Operator = Arc::new(ZeroOperator { dim: 1 });
        let ops = vec![zero.clone(), zero.clone(), zero.clone(), zero];
        let z0 = BlockVector::from_rows(vec![vec![1.0], vec![4.0], vec![-2.0]]).unwrap();
        let trace = malitsky_tam_run(&ops, &SolverConfig::new(1.0, 0.5), &z0).unwrap();
        assert!(trace.converged);
        let x = trace.final_p[0];
        assert!(x.is_finite());
    }

    #[test]
    fn three_intervals() {
        let ops = vec![interval(0.0, 2.0), interval(1.0, 3.0), interval(1.5, 4.0)];
        let z0 = BlockVector::from_rows(vec![vec![0.0], vec![0.0]]).unwrap();
        let trace = malitsky_tam_run(&ops, &SolverConfig::new(1.0, 0.5), &z0).unwrap();
        assert!(trace.converged);
        let x = trace.final_p[0];
        assert!((1.5 - 1e-5..=2.0 + 1e-5).contains(&x), "x = {x}");
    }

    #[test]
    fn validates_inputs() {
        let ops = vec![interval(0.0, 2.0), interval(1.0, 3.0), interval(1.5, 4.0)];
        let z0 = BlockVector::from_rows(vec![vec![0.0]]).unwrap();
        assert!(malitsky_tam_run(&ops, &SolverConfig::new(1.0, 0.5), &z0).is_err());
        let z0 = BlockVector::from_rows(vec![vec![0.0], vec![0.0]]).unwrap();
        assert!(malitsky_tam_run(&ops, &SolverConfig::new(1.0, 1.0), &z0).is_err());
    }
}
