//! Aggregations behind the paper-style tables and figures.

use std::collections::{BTreeMap, BTreeSet};

use crate::record::{Algorithm, RunRecord};

/// Mean iteration count of one `(algorithm, γ, λ)` cell over all problems and starts.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationSummary {
    pub algorithm: Algorithm,
    pub gamma: f64,
    pub lambda: f64,
    pub runs: usize,
    pub converged: usize,
    pub mean_iterations: f64,
}

pub fn mean_iterations(records: &[RunRecord]) -> Vec<IterationSummary> {
    let mut cells: BTreeMap<(Algorithm, u64, u64), (usize, usize, u64)> = BTreeMap::new();
    for r in records {
        let c = cells
            .entry((r.algorithm, r.gamma.to_bits(), r.lambda.to_bits()))
            .or_default();
        c.0 += 1;
        c.1 += r.converged as usize;
        c.2 += r.iterations;
    }
    let mut out: Vec<IterationSummary> = cells
        .into_iter()
        .map(
            |((algorithm, g, l), (runs, converged, its))| IterationSummary {
                algorithm,
                gamma: f64::from_bits(g),
                lambda: f64::from_bits(l),
                runs,
                converged,
                mean_iterations: its as f64 / runs as f64,
            },
        )
        .collect();
    out.sort_by(|a, b| {
        a.algorithm
            .cmp(&b.algorithm)
            .then(a.gamma.total_cmp(&b.gamma))
            .then(a.lambda.total_cmp(&b.lambda))
    });
    out
}

/// Per algorithm, the fully converged cell with the fewest mean iterations.
pub fn best_parameters(summary: &[IterationSummary]) -> Vec<IterationSummary> {
    let mut best: BTreeMap<Algorithm, &IterationSummary> = BTreeMap::new();
    for s in summary.iter().filter(|s| s.converged == s.runs) {
        let slot = best.entry(s.algorithm).or_insert(s);
        if s.mean_iterations < slot.mean_iterations {
            *slot = s;
        }
    }
    best.into_values().cloned().collect()
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    })
}

/// Per-problem ratio of an algorithm's mean run time to the baseline's.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeRatios {
    pub algorithm: Algorithm,
    /// `(problem_id, ratio)` sorted by problem.
    pub ratios: Vec<(String, f64)>,
    pub median: Option<f64>,
}

pub fn time_ratios(records: &[RunRecord], baseline: Algorithm) -> Vec<TimeRatios> {
    let mut mean: BTreeMap<(Algorithm, &str), (f64, usize)> = BTreeMap::new();
    for r in records {
        let m = mean
            .entry((r.algorithm, r.problem_id.as_str()))
            .or_default();
        m.0 += r.time_us as f64;
        m.1 += 1;
    }
    let algs: BTreeSet<Algorithm> = mean.keys().map(|k| k.0).collect();
    algs.into_iter()
        .map(|a| {
            let ratios: Vec<(String, f64)> = mean
                .iter()
                .filter(|((alg, _), _)| *alg == a)
                .filter_map(|((_, p), (t, n))| {
                    let (bt, bn) = mean.get(&(baseline, *p))?;
                    // clamp so sub-microsecond runs do not divide by zero
                    Some((
                        p.to_string(),
                        (t / *n as f64).max(1.0) / (bt / *bn as f64).max(1.0),
                    ))
                })
                .collect();
            TimeRatios {
                algorithm: a,
                median: median(ratios.iter().map(|r| r.1).collect()),
                ratios,
            }
        })
        .collect()
}

/// Solved share, win share and median solve time of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveSummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub solved_pct: f64,
    /// Share of (problem, start) pairs where this algorithm solved fastest; ties count
    /// for every tied algorithm.
    pub win_pct: f64,
    pub median_time_us: Option<f64>,
}

pub fn solve_table(records: &[RunRecord]) -> Vec<SolveSummary> {
    let mut fastest: BTreeMap<(&str, u64), u64> = BTreeMap::new();
    for r in records.iter().filter(|r| r.converged) {
        let f = fastest
            .entry((r.problem_id.as_str(), r.start_id))
            .or_insert(u64::MAX);
        *f = (*f).min(r.time_us);
    }
    let instances: BTreeSet<(&str, u64)> = records
        .iter()
        .map(|r| (r.problem_id.as_str(), r.start_id))
        .collect();
    let algs: BTreeSet<Algorithm> = records.iter().map(|r| r.algorithm).collect();
    algs.into_iter()
        .map(|a| {
            let mine: Vec<&RunRecord> = records.iter().filter(|r| r.algorithm == a).collect();
            let solved: Vec<&&RunRecord> = mine.iter().filter(|r| r.converged).collect();
            let wins = solved
                .iter()
                .filter(|r| fastest.get(&(r.problem_id.as_str(), r.start_id)) == Some(&r.time_us))
                .count();
            SolveSummary {
                algorithm: a,
                runs: mine.len(),
                solved_pct: 100.0 * solved.len() as f64 / mine.len() as f64,
                win_pct: 100.0 * wins as f64 / instances.len() as f64,
                median_time_us: median(solved.iter().map(|r| r.time_us as f64).collect()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Outcome;

    fn rec(
        a: Algorithm,
        p: &str,
        start: u64,
        lambda: f64,
        its: u64,
        t: u64,
        ok: bool,
    ) -> RunRecord {
        RunRecord {
            algorithm: a,
            problem_id: p.into(),
            start_id: start,
            gamma: 25.0,
            lambda,
            iterations: its,
            time_us: t,
            converged: ok,
            outcome: Outcome::Valid(ok),
            seed: 0,
        }
    }

    #[test]
    fn iteration_means_and_best_cells() {
        use Algorithm::*;
        let recs = [
            rec(ReducedDr, "p", 0, 1.0, 10, 1, true),
            rec(ReducedDr, "p", 1, 1.0, 20, 1, true),
            rec(ReducedDr, "p", 0, 1.3, 4, 1, true),
            rec(ReducedDr, "p", 1, 1.3, 6, 1, false),
            rec(Ryu, "p", 0, 1.0, 7, 1, true),
        ];
        let s = mean_iterations(&recs);
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].lambda, s[0].mean_iterations), (1.0, 15.0));
        assert_eq!((s[1].mean_iterations, s[1].converged), (5.0, 1));
        let best = best_parameters(&s);
        // the λ = 1.3 cell has a failed run, so λ = 1.0 wins
        assert_eq!(
            best.iter()
                .map(|b| (b.algorithm, b.lambda))
                .collect::<Vec<_>>(),
            [(ReducedDr, 1.0), (Ryu, 1.0)]
        );
    }

    #[test]
    fn ratio_medians() {
        use Algorithm::*;
        let recs = [
            rec(ReducedDr, "a", 0, 1.0, 1, 100, true),
            rec(ReducedDr, "b", 0, 1.0, 1, 100, true),
            rec(ReducedDr, "c", 0, 1.0, 1, 100, true),
            rec(StandardDr, "a", 0, 1.0, 1, 200, true),
            rec(StandardDr, "b", 0, 1.0, 1, 400, true),
            rec(StandardDr, "b", 1, 1.0, 1, 600, true),
            rec(StandardDr, "c", 0, 1.0, 1, 300, true),
        ];
        let r = time_ratios(&recs, ReducedDr);
        let sd = r.iter().find(|t| t.algorithm == StandardDr).unwrap();
        assert_eq!(
            sd.ratios,
            vec![("a".into(), 2.0), ("b".into(), 5.0), ("c".into(), 3.0)]
        );
        assert_eq!(sd.median, Some(3.0));
        assert_eq!(
            r.iter().find(|t| t.algorithm == ReducedDr).unwrap().median,
            Some(1.0)
        );
    }

    #[test]
    fn solve_table_counts() {
        use Algorithm::*;
        let recs = [
            rec(ReducedDr, "a", 0, 1.0, 1, 10, true),
            rec(StandardDr, "a", 0, 1.0, 1, 10, true),
            rec(ReducedDr, "a", 1, 1.0, 1, 50, true),
            rec(StandardDr, "a", 1, 1.0, 1, 20, true),
            rec(ReducedDr, "b", 0, 1.0, 1, 99, false),
            rec(StandardDr, "b", 0, 1.0, 1, 30, true),
        ];
        let t = solve_table(&recs);
        let rd = &t[1];
        assert_eq!(rd.algorithm, ReducedDr);
        assert!((rd.solved_pct - 200.0 / 3.0).abs() < 1e-12);
        assert!((rd.win_pct - 100.0 / 3.0).abs() < 1e-12);
        assert_eq!(rd.median_time_us, Some(30.0));
        let sd = &t[0];
        assert_eq!(
            (sd.solved_pct, sd.win_pct, sd.median_time_us),
            (100.0, 100.0, Some(20.0))
        );
    }
}
