//! Dolan–Moré performance profiles over run records.
//!
//! Per problem `p` and solver `a`: `s_{a,p}` is the fraction of successful runs and
//! `t_{a,p}` the mean time of those runs; `t*_p = min_a t_{a,p}` and
//! `ρ_a(τ) = (1/N) Σ_{p : t_{a,p} ≤ τ t*_p} s_{a,p}`. Problems no solver managed are
//! left out of `N` and reported separately.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;

use crate::error::{io_err, BenchError, Result};
use crate::record::RunRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub algorithm: String,
    pub taus: Vec<f64>,
    pub rhos: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub curves: Vec<ProfileCurve>,
    /// Problems counted in `N`.
    pub problems: usize,
    /// Problems without a single successful run, excluded from `N`.
    pub unsolved: Vec<String>,
}

/// `samples` points from 1 to `tau_max`, evenly spaced on a log scale.
pub fn tau_grid(tau_max: f64, samples: usize) -> Result<Vec<f64>> {
    if !(tau_max.is_finite() && tau_max >= 1.0) || samples < 2 {
        return Err(BenchError::Config(
            "need tau-max >= 1 and at least 2 samples".into(),
        ));
    }
    let last = samples - 1;
    Ok((0..samples)
        .map(|i| match i {
            0 => 1.0,
            i if i == last => tau_max,
            i => tau_max.powf(i as f64 / last as f64),
        })
        .collect())
}

/// Solver label: the algorithm id, qualified by `(γ, λ)` when a record set mixes several
/// parameter pairs for one algorithm.
fn labels(records: &[RunRecord]) -> Vec<String> {
    let mut params: BTreeMap<&str, BTreeSet<(u64, u64)>> = BTreeMap::new();
    for r in records {
        params
            .entry(r.algorithm.id())
            .or_default()
            .insert((r.gamma.to_bits(), r.lambda.to_bits()));
    }
    records
        .iter()
        .map(|r| {
            if params[r.algorithm.id()].len() > 1 {
                format!("{}(gamma={:?},lambda={:?})", r.algorithm, r.gamma, r.lambda)
            } else {
                r.algorithm.id().to_string()
            }
        })
        .collect()
}

#[derive(Default)]
struct Cell {
    runs: usize,
    successes: usize,
    success_time: f64,
}

pub fn performance_profile(records: &[RunRecord], taus: &[f64]) -> Result<Profile> {
    if records.is_empty() {
        return Err(BenchError::Config("no records to profile".into()));
    }
    if taus.iter().any(|t| t.is_nan() || *t < 1.0) {
        return Err(BenchError::Config("tau values must be >= 1".into()));
    }
    let names = labels(records);
    let solvers: BTreeSet<&str> = names.iter().map(String::as_str).collect();
    let mut cells: BTreeMap<&str, BTreeMap<&str, Cell>> = BTreeMap::new();
    for (r, name) in records.iter().zip(&names) {
        let c = cells
            .entry(r.problem_id.as_str())
            .or_default()
            .entry(name.as_str())
            .or_default();
        c.runs += 1;
        if r.converged {
            c.successes += 1;
            c.success_time += r.time_us as f64;
        }
    }

    // per problem: (s_{a,p}, t_{a,p}) for solvers with successes, and t*_p
    let mut table = Vec::new();
    let mut unsolved = Vec::new();
    for (problem, per) in &cells {
        let stats: BTreeMap<&str, (f64, f64)> = per
            .iter()
            .filter(|(_, c)| c.successes > 0)
            .map(|(a, c)| {
                (
                    *a,
                    (
                        c.successes as f64 / c.runs as f64,
                        c.success_time / c.successes as f64,
                    ),
                )
            })
            .collect();
        match stats.values().map(|s| s.1).min_by(f64::total_cmp) {
            Some(best) => table.push((stats, best)),
            None => unsolved.push(problem.to_string()),
        }
    }

    let n = table.len() as f64;
    let curves = solvers
        .iter()
        .map(|&a| {
            let rhos = taus
                .iter()
                .map(|&tau| {
                    if table.is_empty() {
                        return 0.0;
                    }
                    let sum = table
                        .iter()
                        .filter_map(|(stats, best)| {
                            stats
                                .get(a)
                                .filter(|(_, t)| *t <= tau * best)
                                .map(|(s, _)| *s)
                        })
                        .fold(0.0, |acc, s| acc + s);
                    sum / n
                })
                .collect();
            ProfileCurve {
                algorithm: a.to_string(),
                taus: taus.to_vec(),
                rhos,
            }
        })
        .collect();
    Ok(Profile {
        curves,
        problems: table.len(),
        unsolved,
    })
}

pub fn write_profile<W: Write>(curves: &[ProfileCurve], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algorithm", "tau", "rho"])?;
    for c in curves {
        for (t, r) in c.taus.iter().zip(&c.rhos) {
            w.write_record([c.algorithm.clone(), format!("{t:?}"), format!("{r:?}")])?;
        }
    }
    w.flush().map_err(io_err("<csv writer>"))?;
    Ok(())
}

pub fn emit_profile_csv(curves: &[ProfileCurve], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    write_profile(curves, std::io::BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{Algorithm, Outcome};

    fn rec(a: Algorithm, problem: &str, time_us: u64, converged: bool) -> RunRecord {
        RunRecord {
            algorithm: a,
            problem_id: problem.into(),
            start_id: 0,
            gamma: 1.0,
            lambda: 1.0,
            iterations: 1,
            time_us,
            converged,
            outcome: Outcome::Valid(converged),
            seed: 0,
        }
    }

    fn curve<'a>(p: &'a Profile, name: &str) -> &'a [f64] {
        &p.curves.iter().find(|c| c.algorithm == name).unwrap().rhos
    }

    #[test]
    fn hand_example() {
        use Algorithm::{ReducedDr as A, StandardDr as B};
        let recs = [
            rec(A, "p1", 1, true),
            rec(A, "p2", 2, true),
            rec(B, "p1", 2, true),
            rec(B, "p2", 2, true),
        ];
        let p = performance_profile(&recs, &[1.0, 1.5, 2.0]).unwrap();
        assert_eq!(curve(&p, "reduced-dr"), [1.0, 1.0, 1.0]);
        assert_eq!(curve(&p, "standard-dr"), [0.5, 0.5, 1.0]);
    }

    #[test]
    fn partial_success_and_unsolved_problems() {
        use Algorithm::{MalitskyTam as M, ReducedDr as R};
        let recs = [
            rec(R, "p1", 10, true),
            rec(R, "p1", 30, true),
            rec(R, "p1", 99, false),
            rec(R, "p1", 99, false),
            rec(M, "p1", 40, true),
            rec(R, "p2", 5, false),
            rec(M, "p2", 5, false),
        ];
        let p = performance_profile(&recs, &[1.0, 2.0]).unwrap();
        assert_eq!(p.problems, 1);
        assert_eq!(p.unsolved, vec!["p2".to_string()]);
        // t_R = 20, t_M = 40, s_R = 0.5, s_M = 1
        assert_eq!(curve(&p, "reduced-dr"), [0.5, 0.5]);
        assert_eq!(curve(&p, "malitsky-tam"), [0.0, 1.0]);
    }

    #[test]
    fn mixed_parameters_get_separate_curves() {
        let mut a = rec(Algorithm::Ryu, "p", 1, true);
        let mut b = a.clone();
        a.lambda = 0.5;
        b.lambda = 1.0;
        let p = performance_profile(&[a, b], &[1.0]).unwrap();
        assert_eq!(p.curves.len(), 2);
        assert!(p.curves[0].algorithm.starts_with("ryu(gamma=1.0,lambda="));
    }

    #[test]
    fn tau_grid_shape() {
        let t = tau_grid(32.0, 200).unwrap();
        assert_eq!(t.len(), 200);
        assert_eq!((t[0], t[199]), (1.0, 32.0));
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert!((t[1] / t[0] - t[2] / t[1]).abs() < 1e-12);
        assert!(tau_grid(0.5, 10).is_err());
        assert!(tau_grid(4.0, 1).is_err());
    }

    #[test]
    fn profile_csv_layout() {
        let c = ProfileCurve {
            algorithm: "ryu".into(),
            taus: vec![1.0, 2.0],
            rhos: vec![0.25, 1.0],
        };
        let mut buf = Vec::new();
        write_profile(&[c], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "algorithm,tau,rho\nryu,1.0,0.25\nryu,2.0,1.0\n"
        );
    }
}
