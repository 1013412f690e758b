use crate::error::{check_dim, Result, SplitError};
use crate::lift::ReducedLift;
use crate::vector::BlockVector;

use super::{
    drive, mean_into, reflect_into, relax, to_vectors, Iteration, SolverConfig, SolverTrace,
};

/// Douglas–Rachford on the reduced lift, optionally anchored (AAMR).
///
/// Plain iteration, with `m = r - 1` blocks:
///
/// ```text
/// p_k     = J_{γ/m A_r}( (1/m) Σ x_{i,k} )
/// z_{i,k} = J_{γ A_i}( 2 p_k - x_{i,k} )
/// x_{i,k+1} = x_{i,k} + λ (z_{i,k} - p_k)
/// ```
///
/// With an anchor `q` and β ∈ (0,1) both resolvent arguments are averaged with `q`:
/// `β·(...) + (1-β) q`. The anchored shadow `p_k` then converges to
/// `J_{γ/(2(1-β)m) Σ A_i}(q)`.
pub struct ReducedDr {
    lift: ReducedLift,
    gamma: f64,
    lambda: f64,
    anchor: Option<(f64, Vec<f64>)>,
    x: Vec<Vec<f64>>,
    z: Vec<Vec<f64>>,
    p: Vec<f64>,
    scratch: Vec<f64>,
    last_step: f64,
}

impl ReducedDr {
    pub fn new(lift: &ReducedLift, cfg: &SolverConfig, x0: &BlockVector) -> Result<Self> {
        cfg.validate()?;
        cfg.validate_dr_lambda()?;
        ReducedDr::build(lift, cfg, x0, None)
    }

    /// AAMR variant using `cfg.beta` and `cfg.anchor`.
    pub fn anchored(lift: &ReducedLift, cfg: &SolverConfig, x0: &BlockVector) -> Result<Self> {
        cfg.validate()?;
        cfg.validate_lambda_in(2.0, true)?;
        let q = cfg.validate_anchor(lift.base_dim())?;
        ReducedDr::build(lift, cfg, x0, Some((cfg.beta, q.to_vec())))
    }

    fn build(
        lift: &ReducedLift,
        cfg: &SolverConfig,
        x0: &BlockVector,
        anchor: Option<(f64, Vec<f64>)>,
    ) -> Result<Self> {
        if x0.block_count() != lift.block_count() {
            return Err(SplitError::BlockCount {
                expected: lift.block_count(),
                found: x0.block_count(),
            });
        }
        check_dim(lift.base_dim(), x0.block_dim())?;
        let n = lift.base_dim();
        let mut it = ReducedDr {
            lift: lift.clone(),
            gamma: cfg.gamma,
            lambda: cfg.lambda,
            anchor,
            x: x0.blocks().iter().map(|b| b.to_vec()).collect(),
            z: vec![vec![0.0; n]; lift.block_count()],
            p: vec![0.0; n],
            scratch: vec![0.0; n],
            last_step: 0.0,
        };
        it.update_p();
        Ok(it)
    }

    fn anchor_into(&self, buf: &mut [f64]) {
        if let Some((beta, q)) = &self.anchor {
            for (b, qi) in buf.iter_mut().zip(q) {
                *b = beta * *b + (1.0 - beta) * qi;
            }
        }
    }

    fn update_p(&mut self) {
        let mut m = std::mem::take(&mut self.scratch);
        mean_into(&self.x, &mut m);
        self.anchor_into(&mut m);
        self.lift.k_step_into(self.gamma, &m, &mut self.p);
        self.scratch = m;
    }

    /// Current `z_{i,k}` blocks from the last step.
    pub fn z_blocks(&self) -> &[Vec<f64>] {
        &self.z
    }

    pub fn x_blocks(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn run(self, cfg: &SolverConfig) -> SolverTrace {
        drive(self, cfg, |_| false)
    }
}

impl Iteration for ReducedDr {
    fn shadow(&self) -> &[f64] {
        &self.p
    }

    fn step(&mut self) {
        let mut y = std::mem::take(&mut self.scratch);
        let mut sq = 0.0;
        for (i, op) in self.lift.b_operators().iter().enumerate() {
            reflect_into(&self.p, &self.x[i], &mut y);
            self.anchor_into(&mut y);
            op.resolve_into(self.gamma, &y, &mut self.z[i]);
            sq += relax(self.lambda, &self.z[i], &self.p, &mut self.x[i]);
        }
        self.scratch = y;
        self.last_step = sq.sqrt();
        self.update_p();
    }

    fn state(&self) -> Vec<crate::vector::Vector> {
        to_vectors(&self.x)
    }

    fn state_step(&self) -> f64 {
        self.last_step
    }
}

/// Runs Douglas–Rachford on the reduced lift from `x0` (r−1 blocks).
pub fn reduced_dr_run(
    lift: &ReducedLift,
    cfg: &SolverConfig,
    x0: &BlockVector,
) -> Result<SolverTrace> {
    Ok(ReducedDr::new(lift, cfg, x0)?.run(cfg))
}

/// Runs the parallel AAMR iteration on the reduced lift; `cfg` must carry β and the anchor.
pub fn aamr_run(lift: &ReducedLift, cfg: &SolverConfig, x0: &BlockVector) -> Result<SolverTrace> {
    Ok(ReducedDr::anchored(lift, cfg, x0)?.run(cfg))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::resolvent::{AffineOperator, NormalCone, Operator, ZeroOperator};
    use crate::sets::BoxSet;
    use crate::solvers::{StopReason, StoppingRule};
    use crate::vector::Vector;

    fn interval(lo: f64, hi: f64) -> Operator {
        Arc::new(NormalCone(BoxSet::interval(lo, hi).unwrap()))
    }

    fn bv(rows: &[&[f64]]) -> BlockVector {
        BlockVector::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_intervals_hand_iteration() {
        let lift = ReducedLift::new(vec![interval(0.0, 2.0), interval(1.0, 3.0)]).unwrap();
        let cfg = SolverConfig::new(1.0, 1.0);
        let mut it = ReducedDr::new(&lift, &cfg, &bv(&[&[0.0]])).unwrap();
        assert_eq!(it.shadow(), &[1.0]);
        it.step();
        assert_eq!(it.z_blocks()[0], vec![2.0]);
        assert_eq!(it.x_blocks()[0], vec![1.0]);
        assert_eq!(it.shadow(), &[1.0]);

        let trace = reduced_dr_run(&lift, &cfg, &bv(&[&[0.0]])).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.iterations, 1);
        assert_eq!(trace.final_p.as_slice(), &[1.0]);
        assert!((1.0..=2.0).contains(&trace.final_p[0]));
    }

    #[test]
    fn zero_operators_stop_after_one_step() {
        let zero: Operator = Arc::new(ZeroOperator { dim: 2 });
        let lift = ReducedLift::new(vec![zero.clone(), zero.clone(), zero]).unwrap();
        let x0 = bv(&[&[1.0, 2.0], &[3.0, -2.0]]);
        let trace = reduced_dr_run(&lift, &SolverConfig::new(1.0, 1.0), &x0).unwrap();
        assert_eq!(trace.iterations, 1);
        assert_eq!(trace.residuals, vec![0.0]);
        assert_eq!(trace.final_p, x0.mean());
    }

    #[test]
    fn aamr_finds_nearest_point_of_intersection() {
        let lift = ReducedLift::new(vec![
            interval(0.5, 2.0),
            interval(1.5, 2.0),
            interval(1.0, 3.0),
        ])
        .unwrap();
        let cfg = SolverConfig::new(1.0, 1.0).with_anchor(0.5, Vector::new(vec![0.0]).unwrap());
        // from x0 = 0 the shadow sits on the clamp P_[1,3] for several steps
        let plateau = aamr_run(&lift, &cfg, &bv(&[&[0.0], &[0.0]])).unwrap();
        assert_eq!(plateau.iterations, 1);
        assert_eq!(plateau.final_p[0], 1.0);

        let cfg = cfg.with_stopping(StoppingRule::ShadowAndState);
        let trace = aamr_run(&lift, &cfg, &bv(&[&[0.0], &[0.0]])).unwrap();
        assert!(trace.converged);
        assert!((trace.final_p[0] - 1.5).abs() < 1e-4);
    }

    #[test]
    fn aamr_with_zero_operators_returns_anchor() {
        let zero: Operator = Arc::new(ZeroOperator { dim: 1 });
        let lift = ReducedLift::new(vec![zero.clone(), zero]).unwrap();
        let cfg = SolverConfig::new(1.0, 1.0)
            .with_anchor(0.5, Vector::new(vec![4.0]).unwrap())
            .with_epsilon(1e-12);
        let trace = aamr_run(&lift, &cfg, &bv(&[&[0.0]])).unwrap();
        assert!(trace.converged);
        assert!((trace.final_p[0] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn aamr_affine_identity_limit() {
        // J_{(γ/(2(1-β)(r-1))) Σ A_i}(4) with A_i = Id, r = 2, β = 0.5, γ = 1: p + 2p = 4
        let id: Operator = Arc::new(AffineOperator::scaled_identity(1, 1.0).unwrap());
        let lift = ReducedLift::new(vec![id.clone(), id]).unwrap();
        let cfg = SolverConfig::new(1.0, 1.0)
            .with_anchor(0.5, Vector::new(vec![4.0]).unwrap())
            .with_epsilon(1e-13);
        let trace = aamr_run(&lift, &cfg, &bv(&[&[0.0]])).unwrap();
        assert!((trace.final_p[0] - 4.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn non_converged_run_reports_max_iter() {
        let inst = crate::problems::generate_heron(0, 20, 3).unwrap();
        let lift = ReducedLift::new(inst.operators()).unwrap();
        let cfg = SolverConfig::new(1.0, 1.0).with_max_iter(10);
        let trace = reduced_dr_run(&lift, &cfg, &crate::problems::random_start(0, 2, 20)).unwrap();
        assert!(!trace.converged);
        assert_eq!(trace.stop, StopReason::MaxIterations);
        assert_eq!(trace.iterations, 10);
        assert_eq!(trace.residuals.len(), 10);
    }

    #[test]
    fn stopping_off_runs_to_the_cap_or_acceptance() {
        let zero: Operator = Arc::new(ZeroOperator { dim: 1 });
        let lift = ReducedLift::new(vec![zero.clone(), zero]).unwrap();
        let cfg = SolverConfig::new(1.0, 1.0)
            .with_stopping(StoppingRule::Off)
            .with_max_iter(7);
        let trace = reduced_dr_run(&lift, &cfg, &bv(&[&[2.0]])).unwrap();
        assert_eq!(trace.stop, StopReason::MaxIterations);
        assert_eq!(trace.residuals, vec![0.0; 7]);

        let mut calls = 0;
        let it = ReducedDr::new(&lift, &cfg, &bv(&[&[2.0]])).unwrap();
        let trace = crate::solvers::drive(it, &cfg, |_| {
            calls += 1;
            calls == 3
        });
        assert_eq!(trace.stop, StopReason::Accepted);
        assert_eq!(trace.iterations, 3);
        assert!(!trace.converged);
    }

    #[test]
    fn rejects_wrong_block_count_and_parameters() {
        let lift = ReducedLift::new(vec![
            interval(0.0, 1.0),
            interval(0.0, 1.0),
            interval(0.0, 1.0),
        ])
        .unwrap();
        let cfg = SolverConfig::new(1.0, 1.0);
        assert!(matches!(
            reduced_dr_run(&lift, &cfg, &bv(&[&[0.0]])),
            Err(SplitError::BlockCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(
            reduced_dr_run(&lift, &SolverConfig::new(1.0, 2.0), &bv(&[&[0.0], &[0.0]])).is_err()
        );
        assert!(aamr_run(&lift, &cfg, &bv(&[&[0.0], &[0.0]])).is_err());
    }
}
