use std::time::Duration;

use crate::error::{check_dim, check_positive, Result, SplitError};
use crate::vector::{distance, Vector};

/// Parameters shared by all solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Resolvent step size γ > 0.
    pub gamma: f64,
    /// Relaxation λ; the admissible range depends on the algorithm.
    pub lambda: f64,
    /// AAMR averaging parameter β ∈ (0, 1).
    pub beta: f64,
    /// Cauchy tolerance on the monitored sequence.
    pub epsilon: f64,
    pub max_iter: usize,
    /// AAMR anchor point `q`.
    pub anchor: Option<Vector>,
    pub time_limit: Option<Duration>,
    /// Caller asserts that the last operator is uniformly monotone, which admits λ = 2
    /// (Peaceman–Rachford) for the DR variants.
    pub uniformly_monotone: bool,
    pub stopping: StoppingRule,
}

/// Which sequences the Cauchy test watches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StoppingRule {
    /// `||p_{k+1} - p_k|| < ε` on the monitored sequence only.
    #[default]
    Shadow,
    /// Additionally require the governing variables to have moved less than ε. Guards
    /// against plateaus of the monitored sequence, which occur with polyhedral sets
    /// whose projectors are locally constant.
    ShadowAndState,
    /// No Cauchy test: only the acceptance hook, the iteration cap or the time limit end
    /// a run. Used for feasibility searches on nonconvex sets.
    Off,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            gamma: 1.0,
            lambda: 1.0,
            beta: 0.5,
            epsilon: 1e-6,
            max_iter: 100_000,
            anchor: None,
            time_limit: None,
            uniformly_monotone: false,
            stopping: StoppingRule::Shadow,
        }
    }
}

impl SolverConfig {
    pub fn new(gamma: f64, lambda: f64) -> Self {
        SolverConfig {
            gamma,
            lambda,
            ..Default::default()
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_anchor(mut self, beta: f64, anchor: Vector) -> Self {
        self.beta = beta;
        self.anchor = Some(anchor);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_stopping(mut self, rule: StoppingRule) -> Self {
        self.stopping = rule;
        self
    }

    pub fn assume_uniformly_monotone(mut self) -> Self {
        self.uniformly_monotone = true;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_positive("gamma", self.gamma)?;
        check_positive("epsilon", self.epsilon)?;
        if self.max_iter == 0 {
            return Err(invalid("max_iter", "must be positive".into()));
        }
        Ok(())
    }

    /// λ ∈ (0, 2), or λ = 2 when uniform monotonicity has been asserted.
    pub(crate) fn validate_dr_lambda(&self) -> Result<()> {
        let l = self.lambda;
        if l > 0.0 && l < 2.0 || (l == 2.0 && self.uniformly_monotone) {
            Ok(())
        } else if l == 2.0 {
            Err(invalid(
                "lambda",
                "λ = 2 requires asserting uniform monotonicity of the last operator".into(),
            ))
        } else {
            Err(invalid("lambda", format!("must lie in (0, 2), got {l}")))
        }
    }

    pub(crate) fn validate_lambda_in(&self, hi: f64, closed: bool) -> Result<()> {
        let l = self.lambda;
        let ok = l > 0.0 && if closed { l <= hi } else { l < hi };
        if ok {
            Ok(())
        } else {
            let bracket = if closed { ']' } else { ')' };
            Err(invalid(
                "lambda",
                format!("must lie in (0, {hi}{bracket}, got {l}"),
            ))
        }
    }

    pub(crate) fn validate_anchor(&self, dim: usize) -> Result<&Vector> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(invalid(
                "beta",
                format!("must lie in (0, 1), got {}", self.beta),
            ));
        }
        let q = self
            .anchor
            .as_ref()
            .ok_or_else(|| invalid("anchor", "AAMR needs an anchor point".into()))?;
        check_dim(dim, q.dim())?;
        Ok(q)
    }
}

fn invalid(name: &'static str, reason: String) -> SplitError {
    SplitError::InvalidParameter { name, reason }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Cauchy criterion met.
    Converged,
    /// Caller-supplied criterion accepted the monitored point.
    Accepted,
    MaxIterations,
    TimeLimit,
    /// The monitored sequence stopped being finite.
    Diverged,
}

/// History of one solver run.
#[derive(Debug, Clone)]
pub struct SolverTrace {
    pub iterations: usize,
    /// `||p_{k+1} - p_k||` for every step taken.
    pub residuals: Vec<f64>,
    pub final_p: Vector,
    pub final_state: Vec<Vector>,
    pub converged: bool,
    pub stop: StopReason,
    pub wall_time: Duration,
}

impl SolverTrace {
    pub fn last_residual(&self) -> Option<f64> {
        self.residuals.last().copied()
    }
}

/// Strict Cauchy test `||next - prev|| < ε`.
pub fn stopping_check(prev: &Vector, next: &Vector, epsilon: f64) -> Result<bool> {
    check_dim(prev.dim(), next.dim())?;
    Ok(distance(prev, next) < epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn stopping_check_is_strict() {
        assert!(stopping_check(&v(&[1.0, 2.0]), &v(&[1.0, 2.0]), 1e-6).unwrap());
        assert!(!stopping_check(&v(&[0.0]), &v(&[1e-6]), 1e-6).unwrap());
        assert!(stopping_check(&v(&[0.0]), &v(&[0.5e-6]), 1e-6).unwrap());
        assert!(stopping_check(&v(&[0.0]), &v(&[0.0, 1.0]), 1e-6).is_err());
    }

    #[test]
    fn lambda_two_needs_assertion() {
        let cfg = SolverConfig::new(1.0, 2.0);
        assert!(cfg.validate_dr_lambda().is_err());
        assert!(cfg
            .clone()
            .assume_uniformly_monotone()
            .validate_dr_lambda()
            .is_ok());
        assert!(SolverConfig::new(1.0, 0.0).validate_dr_lambda().is_err());
        assert!(SolverConfig::new(1.0, 2.5)
            .assume_uniformly_monotone()
            .validate_dr_lambda()
            .is_err());
    }

    #[test]
    fn lambda_ranges() {
        assert!(SolverConfig::new(1.0, 1.0)
            .validate_lambda_in(1.0, true)
            .is_ok());
        assert!(SolverConfig::new(1.0, 1.0)
            .validate_lambda_in(1.0, false)
            .is_err());
        assert!(SolverConfig::new(1.0, 0.9)
            .validate_lambda_in(1.0, false)
            .is_ok());
    }

    #[test]
    fn anchor_validation() {
        let cfg = SolverConfig::new(1.0, 1.0);
        assert!(cfg.validate_anchor(1).is_err());
        let cfg = cfg.with_anchor(1.0, v(&[0.0]));
        assert!(cfg.validate_anchor(1).is_err());
        let cfg = SolverConfig::new(1.0, 1.0).with_anchor(0.5, v(&[0.0]));
        assert!(cfg.validate_anchor(1).is_ok());
        assert!(cfg.validate_anchor(2).is_err());
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(SolverConfig::new(0.0, 1.0).validate().is_err());
        assert!(SolverConfig::new(1.0, 1.0)
            .with_epsilon(0.0)
            .validate()
            .is_err());
        assert!(SolverConfig::new(1.0, 1.0)
            .with_max_iter(0)
            .validate()
            .is_err());
    }
}
