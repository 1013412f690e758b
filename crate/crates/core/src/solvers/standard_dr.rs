use crate::error::{check_dim, Result, SplitError};
use crate::lift::StandardLift;
use crate::vector::BlockVector;

use super::{
    drive, mean_into, reflect_into, relax, to_vectors, Iteration, SolverConfig, SolverTrace,
};

/// Douglas–Rachford on Pierra's lift in `H^r`:
///
/// ```text
/// p_k       = (1/r) Σ x_{i,k}
/// z_{i,k}   = J_{γ A_i}(2 p_k - x_{i,k})
/// x_{i,k+1} = x_{i,k} + λ (z_{i,k} - p_k)
/// ```
pub struct StandardDr {
    lift: StandardLift,
    gamma: f64,
    lambda: f64,
    x: Vec<Vec<f64>>,
    z: Vec<Vec<f64>>,
    p: Vec<f64>,
    scratch: Vec<f64>,
    last_step: f64,
}

impl StandardDr {
    pub fn new(lift: &StandardLift, cfg: &SolverConfig, x0: &BlockVector) -> Result<Self> {
        cfg.validate()?;
        cfg.validate_dr_lambda()?;
        if x0.block_count() != lift.count() {
            return Err(SplitError::BlockCount {
                expected: lift.count(),
                found: x0.block_count(),
            });
        }
        check_dim(lift.base_dim(), x0.block_dim())?;
        let n = lift.base_dim();
        let x: Vec<Vec<f64>> = x0.blocks().iter().map(|b| b.to_vec()).collect();
        let mut p = vec![0.0; n];
        mean_into(&x, &mut p);
        Ok(StandardDr {
            lift: lift.clone(),
            gamma: cfg.gamma,
            lambda: cfg.lambda,
            z: vec![vec![0.0; n]; x.len()],
            x,
            p,
            scratch: vec![0.0; n],
            last_step: 0.0,
        })
    }

    pub fn run(self, cfg: &SolverConfig) -> SolverTrace {
        drive(self, cfg, |_| false)
    }
}

impl Iteration for StandardDr {
    fn shadow(&self) -> &[f64] {
        &self.p
    }

    fn step(&mut self) {
        let mut sq = 0.0;
        for (i, op) in self.lift.operators().iter().enumerate() {
            reflect_into(&self.p, &self.x[i], &mut self.scratch);
            op.resolve_into(self.gamma, &self.scratch, &mut self.z[i]);
            sq += relax(self.lambda, &self.z[i], &self.p, &mut self.x[i]);
        }
        self.last_step = sq.sqrt();
        mean_into(&self.x, &mut self.p);
    }

    fn state(&self) -> Vec<crate::vector::Vector> {
        to_vectors(&self.x)
    }

    fn state_step(&self) -> f64 {
        self.last_step
    }
}

/// Runs Douglas–Rachford on the standard lift from `x0` (r blocks).
pub fn standard_dr_run(
    lift: &StandardLift,
    cfg: &SolverConfig,
    x0: &BlockVector,
) -> Result<SolverTrace> {
    Ok(StandardDr::new(lift, cfg, x0)?.run(cfg))
}
