use crate::error::{check_dim, Result, SplitError};
use crate::resolvent::Operator;
use crate::vector::Vector;

use super::{drive, to_vectors, Iteration, SolverConfig, SolverTrace};

/// Ryu's three-operator splitting with 2-fold lifting:
///
/// ```text
/// u_k = J_{γA}(x_k)
/// v_k = J_{γB}(u_k + y_k)
/// w_k = J_{γC}(u_k - x_k + v_k - y_k)
/// x_{k+1} = x_k + λ (w_k - u_k)
/// y_{k+1} = y_k + λ (w_k - v_k)
/// ```
///
/// The monitored point is `w_k`. The convergence theory asks for λ ∈ (0, 1); λ = 1 is
/// also admitted.
pub struct Ryu {
    ops: [Operator; 3],
    gamma: f64,
    lambda: f64,
    x: Vec<f64>,
    y: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    w: Vec<f64>,
    scratch: Vec<f64>,
    last_step: f64,
}

impl Ryu {
    pub fn new(ops: &[Operator], cfg: &SolverConfig, x0: &Vector, y0: &Vector) -> Result<Self> {
        cfg.validate()?;
        cfg.validate_lambda_in(1.0, true)?;
        let [a, b, c] = ops else {
            return Err(SplitError::InvalidParameter {
                name: "operators",
                reason: format!("Ryu splitting takes exactly 3 operators, got {}", ops.len()),
            });
        };
        let n = a.dim();
        check_dim(n, b.dim())?;
        check_dim(n, c.dim())?;
        check_dim(n, x0.dim())?;
        check_dim(n, y0.dim())?;
        let mut it = Ryu {
            ops: [a.clone(), b.clone(), c.clone()],
            gamma: cfg.gamma,
            lambda: cfg.lambda,
            x: x0.to_vec(),
            y: y0.to_vec(),
            u: vec![0.0; n],
            v: vec![0.0; n],
            w: vec![0.0; n],
            scratch: vec![0.0; n],
            last_step: 0.0,
        };
        it.evaluate();
        Ok(it)
    }

    fn evaluate(&mut self) {
        let g = self.gamma;
        self.ops[0].resolve_into(g, &self.x, &mut self.u);
        for ((s, u), y) in self.scratch.iter_mut().zip(&self.u).zip(&self.y) {
            *s = u + y;
        }
        self.ops[1].resolve_into(g, &self.scratch, &mut self.v);
        for i in 0..self.scratch.len() {
            self.scratch[i] = self.u[i] - self.x[i] + self.v[i] - self.y[i];
        }
        self.ops[2].resolve_into(g, &self.scratch, &mut self.w);
    }

    pub fn run(self, cfg: &SolverConfig) -> SolverTrace {
        drive(self, cfg, |_| false)
    }
}

impl Iteration for Ryu {
    fn shadow(&self) -> &[f64] {
        &self.w
    }

    fn step(&mut self) {
        let l = self.lambda;
        let mut sq = 0.0;
        for i in 0..self.x.len() {
            let dx = l * (self.w[i] - self.u[i]);
            let dy = l * (self.w[i] - self.v[i]);
            self.x[i] += dx;
            self.y[i] += dy;
            sq += dx * dx + dy * dy;
        }
        self.last_step = sq.sqrt();
        self.evaluate();
    }

    fn state(&self) -> Vec<Vector> {
        to_vectors(&[self.x.clone(), self.y.clone()])
    }

    fn state_step(&self) -> f64 {
        self.last_step
    }
}

/// Runs Ryu's splitting for `ops = [A, B, C]` from `(x0, y0)`.
pub fn ryu_run(
    ops: &[Operator],
    cfg: &SolverConfig,
    x0: &Vector,
    y0: &Vector,
) -> Result<SolverTrace> {
    Ok(Ryu::new(ops, cfg, x0, y0)?.run(cfg))
}
