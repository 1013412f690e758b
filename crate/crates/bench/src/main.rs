use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use splitting_bench::profile::emit_profile_csv;
use splitting_bench::summary::{best_parameters, mean_iterations, solve_table, time_ratios};
use splitting_bench::*;
use splitting_core::problems::CenterModel;

#[derive(Parser)]
#[command(
    name = "splitbench",
    version,
    about = "Benchmarks for product-space splitting algorithms"
)]
struct Cli {
    /// Worker threads for running independent solves (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized Heron problems over a (gamma, lambda) grid.
    Heron {
        #[arg(long, default_value_t = 100)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,10,25,50,75,100")]
        gamma: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9"
        )]
        lambda: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "standard-dr,reduced-dr,ryu,malitsky-tam"
        )]
        algorithms: Vec<String>,
        #[arg(long, default_value_t = 10)]
        problems: usize,
        #[arg(long, default_value_t = 10)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Cube-center distribution.
        #[arg(long, value_enum, default_value_t = Centers::Cube)]
        centers: Centers,
        #[arg(long)]
        out: PathBuf,
        /// Also write mean iterations per (algorithm, gamma, lambda).
        #[arg(long)]
        iterations_out: Option<PathBuf>,
        /// Also write per-problem time ratios against Reduced-DR.
        #[arg(long)]
        ratios_out: Option<PathBuf>,
    },
    /// Sudoku puzzles as a five-set feasibility problem.
    Sudoku {
        /// A puzzle file or a directory of puzzle files.
        #[arg(long)]
        puzzles: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "standard-dr,reduced-dr,malitsky-tam"
        )]
        algorithms: Vec<String>,
        #[arg(long, default_value_t = 10)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        lambda_dr: f64,
        #[arg(long, default_value_t = 0.5)]
        lambda_mt: f64,
        #[arg(long, default_value_t = 300.0)]
        timeout_secs: f64,
        /// Constraint placed last, i.e. merged into the reduced diagonal set.
        #[arg(long, value_enum, default_value_t = KSet::Givens)]
        k_set: KSet,
        #[arg(long)]
        out: PathBuf,
    },
    /// Performance profiles from a runs CSV.
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 32.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Centers {
    /// Coordinates uniform in [-10, 10].
    Cube,
    /// Uniform direction, norm uniform in [12, 20].
    Sphere,
}

#[derive(Clone, Copy, ValueEnum)]
enum KSet {
    Rows,
    Columns,
    Cells,
    Subgrids,
    Givens,
}

fn parse_algorithms(names: &[String]) -> Result<Vec<Algorithm>> {
    names.iter().map(|n| n.parse()).collect()
}

fn write_table<R>(path: &Path, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<()>
where
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn heron(cmd: Command) -> Result<()> {
    let Command::Heron {
        dim,
        r,
        gamma,
        lambda,
        algorithms,
        problems,
        starts,
        seed,
        eps,
        max_iter,
        centers,
        out,
        iterations_out,
        ratios_out,
    } = cmd
    else {
        unreachable!()
    };
    let algorithms = parse_algorithms(&algorithms)?;
    if r > 3 && algorithms.contains(&Algorithm::Ryu) {
        eprintln!("note: Ryu splitting needs exactly 3 operators; skipped for r = {r}");
    }
    let grid = HeronGrid {
        dim,
        r,
        gammas: gamma,
        lambdas: lambda,
        algorithms,
        problems,
        starts,
        seed,
        epsilon: eps,
        max_iter,
        centers: match centers {
            Centers::Cube => CenterModel::UniformCube { half_width: 10.0 },
            Centers::Sphere => CenterModel::Sphere {
                min_norm: 12.0,
                max_norm: 20.0,
            },
        },
    };
    let records = run_heron_grid(&grid)?;
    emit_csv(&records, &out)?;

    let summary = mean_iterations(&records);
    println!(
        "{:<14} {:>7} {:>7} {:>12} {:>10}",
        "algorithm", "gamma", "lambda", "mean iters", "converged"
    );
    for s in best_parameters(&summary) {
        println!(
            "{:<14} {:>7} {:>7} {:>12.2} {:>6}/{}",
            s.algorithm, s.gamma, s.lambda, s.mean_iterations, s.converged, s.runs
        );
    }
    if let Some(path) = iterations_out {
        let rows = summary.iter().map(|s| {
            [
                s.algorithm.to_string(),
                format!("{:?}", s.gamma),
                format!("{:?}", s.lambda),
                s.runs.to_string(),
                s.converged.to_string(),
                format!("{:?}", s.mean_iterations),
            ]
        });
        write_table(
            &path,
            &[
                "algorithm",
                "gamma",
                "lambda",
                "runs",
                "converged",
                "mean_iterations",
            ],
            rows,
        )?;
    }
    if let Some(path) = ratios_out {
        let ratios = time_ratios(&records, Algorithm::ReducedDr);
        let rows = ratios.iter().flat_map(|t| {
            t.ratios
                .iter()
                .map(move |(p, v)| [t.algorithm.to_string(), p.clone(), format!("{v:?}")])
        });
        write_table(&path, &["algorithm", "problem_id", "time_ratio"], rows)?;
        for t in &ratios {
            if let Some(m) = t.median {
                println!("median time ratio {} / reduced-dr: {m:.3}", t.algorithm);
            }
        }
    }
    Ok(())
}

fn sudoku(cmd: Command) -> Result<()> {
    let Command::Sudoku {
        puzzles,
        algorithms,
        starts,
        seed,
        lambda_dr,
        lambda_mt,
        timeout_secs,
        k_set,
        out,
    } = cmd
    else {
        unreachable!()
    };
    let timeout = Duration::try_from_secs_f64(timeout_secs)
        .map_err(|_| BenchError::Config(format!("bad timeout {timeout_secs}")))?;
    let (list, issues) = load_puzzles(&puzzles)?;
    for issue in &issues {
        eprintln!("skipping {}: {}", issue.path.display(), issue.message);
    }
    if list.is_empty() {
        return Err(BenchError::Config(format!(
            "no usable puzzles under {}",
            puzzles.display()
        )));
    }
    let suite = SudokuSuite {
        algorithms: parse_algorithms(&algorithms)?,
        starts,
        seed,
        lambda_dr,
        lambda_mt,
        timeout,
        k_set: k_set as usize,
    };
    let records = run_sudoku_suite(&list, &suite)?;
    emit_csv(&records, &out)?;
    println!(
        "{:<14} {:>9} {:>9} {:>14}",
        "algorithm", "solved %", "wins %", "median time s"
    );
    for s in solve_table(&records) {
        let median = s
            .median_time_us
            .map_or("-".to_string(), |t| format!("{:.4}", t / 1e6));
        println!(
            "{:<14} {:>9.1} {:>9.1} {:>14}",
            s.algorithm, s.solved_pct, s.win_pct, median
        );
    }
    Ok(())
}

fn profile(cmd: Command) -> Result<()> {
    let Command::Profile {
        input,
        tau_max,
        samples,
        out,
    } = cmd
    else {
        unreachable!()
    };
    let records = read_csv(&input)?;
    let p = performance_profile(&records, &tau_grid(tau_max, samples)?)?;
    emit_profile_csv(&p.curves, &out)?;
    println!(
        "{} problems profiled, {} unsolved by every algorithm",
        p.problems,
        p.unsolved.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let result = match cli.command {
        cmd @ Command::Heron { .. } => heron(cmd),
        cmd @ Command::Sudoku { .. } => sudoku(cmd),
        cmd @ Command::Profile { .. } => profile(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
