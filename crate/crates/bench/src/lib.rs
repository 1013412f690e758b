//! Experiment harness for the splitting algorithms: generalized Heron parameter grids,
//! Sudoku suites, performance profiles and CSV output.

pub mod error;
pub mod heron;
pub mod profile;
pub mod record;
pub mod sudoku;
pub mod summary;

pub use error::{BenchError, Result};
pub use heron::{run_heron, run_heron_grid, HeronGrid};
pub use profile::{emit_profile_csv, performance_profile, tau_grid, Profile, ProfileCurve};
pub use record::{emit_csv, read_csv, Algorithm, Outcome, RunRecord};
pub use sudoku::{load_puzzles, run_sudoku_suite, solve_sudoku, NamedPuzzle, SudokuSuite};
