use rayon::prelude::*;
use splitting_core::problems::{
    derive_seed, generate_heron_with, random_start, CenterModel, HeronInstance,
};
use splitting_core::solvers::{
    malitsky_tam_run, reduced_dr_run, ryu_run, standard_dr_run, SolverTrace,
};
use splitting_core::{BlockVector, ReducedLift, SolverConfig, StandardLift};

use crate::error::{BenchError, Result};
use crate::record::{Algorithm, Outcome, RunRecord};

const PROBLEM_STREAM: u64 = 1;
const START_STREAM: u64 = 2;

#[derive(Debug, Clone)]
pub struct HeronGrid {
    pub dim: usize,
    pub r: usize,
    pub gammas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub algorithms: Vec<Algorithm>,
    pub problems: usize,
    pub starts: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub centers: CenterModel,
}

impl HeronGrid {
    /// Paper-sized defaults: R^100, r = 3, the full (γ, λ) grid, 10 problems × 10 starts.
    pub fn new(seed: u64) -> Self {
        HeronGrid {
            dim: 100,
            r: 3,
            gammas: vec![1.0, 10.0, 25.0, 50.0, 75.0, 100.0],
            lambdas: (1..=19).map(|i| i as f64 / 10.0).collect(),
            algorithms: Algorithm::ALL.to_vec(),
            problems: 10,
            starts: 10,
            seed,
            epsilon: 1e-6,
            max_iter: 100_000,
            centers: CenterModel::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(BenchError::Config(msg.to_string()));
        if self.gammas.is_empty() || self.gammas.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
            return bad("gammas must be a nonempty list of positive numbers");
        }
        if self.lambdas.is_empty() || self.lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return bad("lambdas must be a nonempty list of positive numbers");
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms selected");
        }
        if self.dim == 0 || self.r < 3 {
            return bad("need dim >= 1 and r >= 3");
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) || self.max_iter == 0 {
            return bad("epsilon and max-iter must be positive");
        }
        Ok(())
    }

    /// Every `(algorithm, γ, λ)` the grid will actually run. Ryu needs exactly three
    /// operators, and each algorithm keeps only the λ its theory admits.
    pub fn combinations(&self) -> Vec<(Algorithm, f64, f64)> {
        let mut out = Vec::new();
        for &a in &self.algorithms {
            if a == Algorithm::Ryu && self.r != 3 {
                continue;
            }
            for &g in &self.gammas {
                for &l in self.lambdas.iter().filter(|&&l| a.admits_lambda(l)) {
                    out.push((a, g, l));
                }
            }
        }
        out
    }

    pub fn problem_id(index: usize) -> String {
        format!("heron-p{index:03}")
    }

    pub fn instance(&self, index: usize) -> Result<HeronInstance> {
        let seed = derive_seed(self.seed, PROBLEM_STREAM << 32 | index as u64);
        Ok(generate_heron_with(seed, self.dim, self.r, self.centers)?)
    }

    /// `r` blocks drawn uniformly from [0, 1); shared by every algorithm and parameter pair.
    pub fn start(&self, problem: usize, start: usize) -> BlockVector {
        let seed = derive_seed(
            self.seed,
            START_STREAM << 48 | (problem as u64) << 24 | start as u64,
        );
        random_start(seed, self.r, self.dim)
    }
}

/// Runs one algorithm from a shared `r`-block start. Standard-DR takes every block,
/// Reduced-DR and Malitsky–Tam the first `r - 1`, Ryu the first two.
pub fn run_heron(
    algorithm: Algorithm,
    inst: &HeronInstance,
    cfg: &SolverConfig,
    start: &BlockVector,
) -> Result<SolverTrace> {
    let ops = inst.operators();
    let r = ops.len();
    let head = || BlockVector::new(start.blocks()[..r - 1].to_vec());
    let trace = match algorithm {
        Algorithm::StandardDr => standard_dr_run(&StandardLift::new(ops)?, cfg, start)?,
        Algorithm::ReducedDr => reduced_dr_run(&ReducedLift::new(ops)?, cfg, &head()?)?,
        Algorithm::MalitskyTam => malitsky_tam_run(&ops, cfg, &head()?)?,
        Algorithm::Ryu => ryu_run(&ops, cfg, &start.blocks()[0], &start.blocks()[1])?,
    };
    Ok(trace)
}

/// One record per (problem, start, algorithm, γ, λ), canonically sorted.
pub fn run_heron_grid(grid: &HeronGrid) -> Result<Vec<RunRecord>> {
    grid.validate()?;
    let instances = (0..grid.problems)
        .map(|p| grid.instance(p))
        .collect::<Result<Vec<_>>>()?;
    let combos = grid.combinations();
    let mut jobs: Vec<(usize, usize, Algorithm, f64, f64)> = Vec::new();
    for p in 0..grid.problems {
        for s in 0..grid.starts {
            jobs.extend(combos.iter().map(|&(a, g, l)| (p, s, a, g, l)));
        }
    }

    let mut records = jobs
        .into_par_iter()
        .map(|(p, s, algorithm, gamma, lambda)| {
            let inst = &instances[p];
            let cfg = SolverConfig::new(gamma, lambda)
                .with_epsilon(grid.epsilon)
                .with_max_iter(grid.max_iter);
            let trace = run_heron(algorithm, inst, &cfg, &grid.start(p, s))?;
            Ok(RunRecord {
                algorithm,
                problem_id: HeronGrid::problem_id(p),
                start_id: s as u64,
                gamma,
                lambda,
                iterations: trace.iterations as u64,
                time_us: trace.wall_time.as_micros() as u64,
                converged: trace.converged,
                outcome: Outcome::Objective(inst.objective(&trace.final_p)?),
                seed: grid.seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(RunRecord::canonical_cmp);
    Ok(records)
}
