use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use splitting_core::problems::sudoku::TENSOR_LEN;
use splitting_core::problems::{
    derive_seed, random_start, sudoku_decode_validate, sudoku_encode, SudokuPuzzle,
};
use splitting_core::solvers::{
    drive, Iteration, MalitskyTam, ReducedDr, StandardDr, StopReason, StoppingRule,
};
use splitting_core::{BlockVector, Operator, ReducedLift, SolverConfig, StandardLift};

use crate::error::{io_err, BenchError, Result};
use crate::record::{Algorithm, Outcome, RunRecord};

/// Number of constraint sets in the Sudoku encoding.
const SETS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPuzzle {
    pub id: String,
    pub puzzle: SudokuPuzzle,
}

/// A puzzle file that could not be used; the rest of the suite still runs.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteIssue {
    pub path: PathBuf,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct SudokuSuite {
    pub algorithms: Vec<Algorithm>,
    pub starts: usize,
    pub seed: u64,
    pub lambda_dr: f64,
    pub lambda_mt: f64,
    pub timeout: Duration,
    /// Constraint (0-based, `C_1..C_5`) placed last; the reduced lift folds it into `K`.
    pub k_set: usize,
}

impl SudokuSuite {
    pub fn new(seed: u64) -> Self {
        SudokuSuite {
            algorithms: vec![
                Algorithm::StandardDr,
                Algorithm::ReducedDr,
                Algorithm::MalitskyTam,
            ],
            starts: 10,
            seed,
            lambda_dr: 1.0,
            lambda_mt: 0.5,
            timeout: Duration::from_secs(300),
            k_set: 4,
        }
    }

    fn lambda(&self, a: Algorithm) -> f64 {
        match a {
            Algorithm::MalitskyTam => self.lambda_mt,
            _ => self.lambda_dr,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.algorithms.contains(&Algorithm::Ryu) {
            return Err(BenchError::Config(
                "Ryu splitting handles exactly 3 operators; Sudoku has 5".into(),
            ));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Config("no algorithms selected".into()));
        }
        for &a in &self.algorithms {
            if !a.admits_lambda(self.lambda(a)) {
                return Err(BenchError::Config(format!(
                    "lambda {} is outside the range of {a}",
                    self.lambda(a)
                )));
            }
        }
        if self.k_set >= SETS {
            return Err(BenchError::Config(format!(
                "k-set index must be below {SETS}"
            )));
        }
        Ok(())
    }

    /// Start tensors for every set; Reduced-DR and Malitsky–Tam take the first four.
    pub fn start(&self, puzzle: usize, start: usize) -> BlockVector {
        let seed = derive_seed(self.seed, (puzzle as u64) << 24 | start as u64);
        random_start(seed, SETS, TENSOR_LEN)
    }
}

/// Parses a puzzle file: one puzzle per non-blank line of 81 cells, whitespace ignored.
pub fn parse_puzzle_file(path: &Path) -> Result<Vec<NamedPuzzle>> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let cells: String = line.chars().filter(|c| !c.is_whitespace()).collect();
        if cells.is_empty() {
            continue;
        }
        let puzzle = cells.parse().map_err(|e| BenchError::Parse {
            row: n + 1,
            msg: format!("{}: {e}", path.display()),
        })?;
        out.push(NamedPuzzle {
            id: format!("{stem}:{}", n + 1),
            puzzle,
        });
    }
    if out.is_empty() {
        return Err(BenchError::Config(format!(
            "{} contains no puzzles",
            path.display()
        )));
    }
    Ok(out)
}

/// Loads every regular file of a directory (sorted by name), or a single file.
pub fn load_puzzles(path: &Path) -> Result<(Vec<NamedPuzzle>, Vec<SuiteIssue>)> {
    let files = if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(io_err(path))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    let mut puzzles = Vec::new();
    let mut issues = Vec::new();
    for f in files {
        match parse_puzzle_file(&f) {
            Ok(ps) => puzzles.extend(ps),
            Err(e) => issues.push(SuiteIssue {
                path: f,
                message: e.to_string(),
            }),
        }
    }
    Ok((puzzles, issues))
}

/// Runs `algorithm` until the monitored tensor decodes to a valid grid or the timeout
/// passes. Returns the trace and whether the final point is a valid solution.
pub fn solve_sudoku(
    algorithm: Algorithm,
    puzzle: &SudokuPuzzle,
    ops: &[Operator],
    lambda: f64,
    timeout: Duration,
    start: &BlockVector,
) -> Result<(splitting_core::SolverTrace, bool)> {
    let cfg = SolverConfig::new(1.0, lambda)
        .with_max_iter(usize::MAX)
        .with_time_limit(timeout)
        .with_stopping(StoppingRule::Off);
    let head = || BlockVector::new(start.blocks()[..SETS - 1].to_vec());
    let accept = |x: &[f64]| sudoku_decode_validate(x, puzzle).1;
    fn go<I: Iteration>(
        it: I,
        cfg: &SolverConfig,
        accept: impl FnMut(&[f64]) -> bool,
    ) -> splitting_core::SolverTrace {
        drive(it, cfg, accept)
    }
    let trace = match algorithm {
        Algorithm::StandardDr => go(
            StandardDr::new(&StandardLift::new(ops.to_vec())?, &cfg, start)?,
            &cfg,
            accept,
        ),
        Algorithm::ReducedDr => go(
            ReducedDr::new(&ReducedLift::new(ops.to_vec())?, &cfg, &head()?)?,
            &cfg,
            accept,
        ),
        Algorithm::MalitskyTam => go(MalitskyTam::new(ops, &cfg, &head()?)?, &cfg, accept),
        Algorithm::Ryu => return Err(BenchError::Config("Ryu does not apply to Sudoku".into())),
    };
    let valid = sudoku_decode_validate(&trace.final_p, puzzle).1;
    Ok((trace, valid))
}

/// One record per (puzzle, start, algorithm), canonically sorted. A run counts as
/// solved (`converged`) when its final point is valid and it finished within the timeout.
pub fn run_sudoku_suite(puzzles: &[NamedPuzzle], suite: &SudokuSuite) -> Result<Vec<RunRecord>> {
    suite.validate()?;
    let ops = puzzles
        .iter()
        .map(|p| {
            let enc = sudoku_encode(&p.puzzle)?;
            Ok(enc.operators_with_last(suite.k_set)?)
        })
        .collect::<Result<Vec<Vec<Operator>>>>()?;
    let jobs: Vec<(usize, usize, Algorithm)> = (0..puzzles.len())
        .flat_map(|p| {
            (0..suite.starts).flat_map(move |s| suite.algorithms.iter().map(move |&a| (p, s, a)))
        })
        .collect();
    let mut records = jobs
        .into_par_iter()
        .map(|(p, s, algorithm)| {
            let lambda = suite.lambda(algorithm);
            let (trace, valid) = solve_sudoku(
                algorithm,
                &puzzles[p].puzzle,
                &ops[p],
                lambda,
                suite.timeout,
                &suite.start(p, s),
            )?;
            let solved =
                trace.stop == StopReason::Accepted && valid && trace.wall_time <= suite.timeout;
            Ok(RunRecord {
                algorithm,
                problem_id: puzzles[p].id.clone(),
                start_id: s as u64,
                gamma: 1.0,
                lambda,
                iterations: trace.iterations as u64,
                time_us: trace.wall_time.as_micros() as u64,
                converged: solved,
                outcome: Outcome::Valid(valid),
                seed: suite.seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(RunRecord::canonical_cmp);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use std::io::Write;

    use super::*;

    const EASY: &str =
        "003020600900305001001806400008102900700000008006708200002609500800203009005010300";

    fn easy() -> Vec<NamedPuzzle> {
        vec![NamedPuzzle {
            id: "easy".into(),
            puzzle: EASY.parse().unwrap(),
        }]
    }

    #[test]
    fn solved_records_are_valid_and_in_time() {
        let suite = SudokuSuite {
            starts: 2,
            timeout: Duration::from_secs(60),
            ..SudokuSuite::new(3)
        };
        let recs = run_sudoku_suite(&easy(), &suite).unwrap();
        assert_eq!(recs.len(), 6);
        for r in &recs {
            assert!(r.converged, "{r:?}");
            assert_eq!(r.outcome, Outcome::Valid(true));
            assert!(r.wall_time() <= suite.timeout);
        }
    }

    #[test]
    fn zero_timeout_solves_nothing() {
        let suite = SudokuSuite {
            starts: 3,
            timeout: Duration::ZERO,
            ..SudokuSuite::new(3)
        };
        let recs = run_sudoku_suite(&easy(), &suite).unwrap();
        assert_eq!(recs.len(), 9);
        assert!(recs.iter().all(|r| !r.converged && r.iterations == 0));
    }

    #[test]
    fn unreadable_files_are_reported_and_skipped() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::File::create(dir.path().join("a.txt"))
            .unwrap()
            .write_all(format!("{EASY}\n\n{}\n", EASY.replace('0', ".")).as_bytes())
            .unwrap();
        std::fs::write(dir.path().join("b.txt"), "12345\n").unwrap();
        std::fs::write(dir.path().join("c.txt"), [0xff, 0xfe]).unwrap();
        let (puzzles, issues) = load_puzzles(dir.path()).unwrap();
        assert_eq!(
            puzzles.iter().map(|p| p.id.as_str()).collect::<Vec<_>>(),
            ["a:1", "a:3"]
        );
        assert_eq!(puzzles[0].puzzle, puzzles[1].puzzle);
        assert_eq!(issues.len(), 2);
        assert!(load_puzzles(&dir.path().join("missing")).unwrap().1.len() == 1);
    }

    #[test]
    fn configuration_errors() {
        let with = |f: fn(&mut SudokuSuite)| {
            let mut s = SudokuSuite::new(0);
            f(&mut s);
            run_sudoku_suite(&easy(), &s)
        };
        assert!(with(|s| s.algorithms = vec![Algorithm::Ryu]).is_err());
        assert!(with(|s| s.lambda_mt = 1.0).is_err());
        assert!(with(|s| s.k_set = 5).is_err());
    }
}
