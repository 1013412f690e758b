//! Run records and their CSV form.
//!
//! Column order: `algorithm,problem_id,start_id,gamma,lambda,iterations,time_us,converged,objective_or_valid,seed`.
//! Reals are written in Rust's shortest round-trip form, so reading a file back yields
//! bit-identical values.

use std::cmp::Ordering;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use crate::error::{io_err, BenchError, Result};

pub const RUN_HEADER: [&str; 10] = [
    "algorithm",
    "problem_id",
    "start_id",
    "gamma",
    "lambda",
    "iterations",
    "time_us",
    "converged",
    "objective_or_valid",
    "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    StandardDr,
    ReducedDr,
    Ryu,
    MalitskyTam,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::StandardDr,
        Algorithm::ReducedDr,
        Algorithm::Ryu,
        Algorithm::MalitskyTam,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::StandardDr => "standard-dr",
            Algorithm::ReducedDr => "reduced-dr",
            Algorithm::Ryu => "ryu",
            Algorithm::MalitskyTam => "malitsky-tam",
        }
    }

    /// Whether the algorithm's convergence theory admits relaxation `lambda`.
    pub fn admits_lambda(self, lambda: f64) -> bool {
        match self {
            Algorithm::StandardDr | Algorithm::ReducedDr => lambda > 0.0 && lambda < 2.0,
            Algorithm::Ryu => lambda > 0.0 && lambda <= 1.0,
            Algorithm::MalitskyTam => lambda > 0.0 && lambda < 1.0,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s.trim())
            .ok_or_else(|| BenchError::Config(format!("unknown algorithm {s:?}")))
    }
}

/// Heron runs report the final objective, Sudoku runs whether the final point decodes
/// to a valid grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Objective(f64),
    Valid(bool),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Objective(v) => write!(f, "{v:?}"),
            Outcome::Valid(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "true" => Ok(Outcome::Valid(true)),
            "false" => Ok(Outcome::Valid(false)),
            _ => s
                .parse()
                .map(Outcome::Objective)
                .map_err(|_| format!("bad objective_or_valid {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub problem_id: String,
    pub start_id: u64,
    pub gamma: f64,
    pub lambda: f64,
    pub iterations: u64,
    pub time_us: u64,
    pub converged: bool,
    pub outcome: Outcome,
    /// Master seed the problem and start were derived from.
    pub seed: u64,
}

impl RunRecord {
    pub fn wall_time(&self) -> Duration {
        Duration::from_micros(self.time_us)
    }

    /// Canonical order: algorithm, problem, start, γ, λ.
    pub fn canonical_cmp(&self, other: &RunRecord) -> Ordering {
        self.algorithm
            .cmp(&other.algorithm)
            .then_with(|| self.problem_id.cmp(&other.problem_id))
            .then_with(|| self.start_id.cmp(&other.start_id))
            .then_with(|| self.gamma.total_cmp(&other.gamma))
            .then_with(|| self.lambda.total_cmp(&other.lambda))
    }

    fn to_row(&self) -> [String; 10] {
        [
            self.algorithm.id().to_string(),
            self.problem_id.clone(),
            self.start_id.to_string(),
            format!("{:?}", self.gamma),
            format!("{:?}", self.lambda),
            self.iterations.to_string(),
            self.time_us.to_string(),
            self.converged.to_string(),
            self.outcome.to_string(),
            self.seed.to_string(),
        ]
    }

    fn from_row(row: &csv::StringRecord, line: usize) -> Result<Self> {
        let err = |msg: String| BenchError::Parse { row: line, msg };
        if row.len() != RUN_HEADER.len() {
            return Err(err(format!(
                "expected {} fields, found {}",
                RUN_HEADER.len(),
                row.len()
            )));
        }
        fn field<T: FromStr>(row: &csv::StringRecord, i: usize) -> std::result::Result<T, String> {
            row[i]
                .parse()
                .map_err(|_| format!("bad {} {:?}", RUN_HEADER[i], &row[i]))
        }
        Ok(RunRecord {
            algorithm: row[0].parse().map_err(|e: BenchError| err(e.to_string()))?,
            problem_id: row[1].to_string(),
            start_id: field(row, 2).map_err(err)?,
            gamma: field(row, 3).map_err(err)?,
            lambda: field(row, 4).map_err(err)?,
            iterations: field(row, 5).map_err(err)?,
            time_us: field(row, 6).map_err(err)?,
            converged: field(row, 7).map_err(err)?,
            outcome: row[8].parse().map_err(err)?,
            seed: field(row, 9).map_err(err)?,
        })
    }
}

pub fn write_records<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUN_HEADER)?;
    for r in records {
        w.write_record(r.to_row())?;
    }
    w.flush().map_err(io_err("<csv writer>"))?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(RUN_HEADER) {
        return Err(BenchError::Parse {
            row: 0,
            msg: format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()),
        });
    }
    rd.records()
        .enumerate()
        .map(|(i, row)| RunRecord::from_row(&row?, i + 1))
        .collect()
}

/// Writes `records` to `path` as CSV (header only when empty).
pub fn emit_csv(records: &[RunRecord], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    write_records(records, std::io::BufWriter::new(file))
}

pub fn read_csv(path: &Path) -> Result<Vec<RunRecord>> {
    let file = std::fs::File::open(path).map_err(io_err(path))?;
    read_records(std::io::BufReader::new(file))
}
