//! Splitting algorithms sharing one driver, one Cauchy stopping rule and one trace type.
//!
//! Each algorithm exposes a *monitored* (shadow) sequence:
//!
//! | algorithm      | monitored point                         |
//! |----------------|-----------------------------------------|
//! | Reduced-DR     | `p_k = J_{γ/(r-1) A_r}(mean x_k)`       |
//! | AAMR           | `p_k` with the anchored mean            |
//! | Standard-DR    | block mean `p_k = mean x_k`             |
//! | Ryu            | `w_k = J_{γC}(...)`                     |
//! | Malitsky–Tam   | `x_{r,k} = J_{γA_r}(...)`               |
//!
//! The run stops the first time `||p_{k+1} - p_k|| < ε`, when `max_iter` steps have
//! been taken, when the optional wall-clock limit expires, or when a caller-supplied
//! criterion accepts the monitored point.

mod config;
mod malitsky_tam;
mod reduced_dr;
mod ryu;
mod standard_dr;

pub use config::{stopping_check, SolverConfig, SolverTrace, StopReason, StoppingRule};
pub use malitsky_tam::{malitsky_tam_run, MalitskyTam};
pub use reduced_dr::{aamr_run, reduced_dr_run, ReducedDr};
pub use ryu::{ryu_run, Ryu};
pub use standard_dr::{standard_dr_run, StandardDr};

use std::time::Instant;

use crate::vector::{distance, Vector};

/// One splitting iteration with a monitored point.
pub trait Iteration {
    /// Current monitored point.
    fn shadow(&self) -> &[f64];

    /// Advances by one iteration, updating the monitored point.
    fn step(&mut self);

    /// Governing variables (the blocks that are updated by the recurrence).
    fn state(&self) -> Vec<Vector>;

    /// Euclidean norm of the change of the governing variables in the last step.
    fn state_step(&self) -> f64;
}

/// Runs `it` under `cfg`. `accept` is consulted after every step with the new monitored
/// point; returning `true` stops the run with [`StopReason::Accepted`].
pub fn drive<I, F>(mut it: I, cfg: &SolverConfig, mut accept: F) -> SolverTrace
where
    I: Iteration,
    F: FnMut(&[f64]) -> bool,
{
    let start = Instant::now();
    let mut residuals = Vec::new();
    let mut prev = it.shadow().to_vec();
    let stop = loop {
        if let Some(limit) = cfg.time_limit {
            if start.elapsed() >= limit {
                break StopReason::TimeLimit;
            }
        }
        if residuals.len() >= cfg.max_iter {
            break StopReason::MaxIterations;
        }
        it.step();
        let next = it.shadow();
        let residual = distance(&prev, next);
        residuals.push(residual);
        if !residual.is_finite() {
            break StopReason::Diverged;
        }
        if accept(next) {
            break StopReason::Accepted;
        }
        let stationary = match cfg.stopping {
            StoppingRule::Shadow => true,
            StoppingRule::ShadowAndState => it.state_step() < cfg.epsilon,
            StoppingRule::Off => false,
        };
        if stationary && residual < cfg.epsilon {
            break StopReason::Converged;
        }
        prev.copy_from_slice(next);
    };
    let final_p = Vector::new(it.shadow().to_vec()).unwrap_or_else(|_| Vector::from_raw(prev));
    SolverTrace {
        iterations: residuals.len(),
        converged: stop == StopReason::Converged,
        residuals,
        final_p,
        final_state: it.state(),
        stop,
        wall_time: start.elapsed(),
    }
}

/// `out = 2p - x`
pub(crate) fn reflect_into(p: &[f64], x: &[f64], out: &mut [f64]) {
    for ((o, pi), xi) in out.iter_mut().zip(p).zip(x) {
        *o = 2.0 * pi - xi;
    }
}

/// `x += λ (z - p)`; returns the squared norm of the increment.
pub(crate) fn relax(lambda: f64, z: &[f64], p: &[f64], x: &mut [f64]) -> f64 {
    let mut sq = 0.0;
    for ((xi, zi), pi) in x.iter_mut().zip(z).zip(p) {
        let d = lambda * (zi - pi);
        *xi += d;
        sq += d * d;
    }
    sq
}

pub(crate) fn mean_into(blocks: &[Vec<f64>], out: &mut [f64]) {
    out.fill(0.0);
    for b in blocks {
        for (o, v) in out.iter_mut().zip(b) {
            *o += v;
        }
    }
    let inv = 1.0 / blocks.len() as f64;
    out.iter_mut().for_each(|o| *o *= inv);
}

pub(crate) fn to_vectors(blocks: &[Vec<f64>]) -> Vec<Vector> {
    blocks
        .iter()
        .map(|b| Vector::new(b.clone()).unwrap_or_else(|_| Vector::from_raw(b.clone())))
        .collect()
}
