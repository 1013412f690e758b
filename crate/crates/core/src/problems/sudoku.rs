//! Sudoku as a feasibility problem over binary tensors `X ∈ R^{9×9×9}`, where
//! `X[i,j,k] = 1` means digit `k+1` sits in cell `(i,j)`.
//!
//! Constraints: every row fiber `X[i,:,k]`, column fiber `X[:,j,k]`, cell fiber
//! `X[i,j,:]` and column-vectorized 3×3 subgrid slice is a standard basis vector of
//! R^9, and the givens are fixed to one. The first four sets are nonconvex and project
//! fiber by fiber; the givens set is affine.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Result, SplitError};
use crate::resolvent::{NormalCone, Operator};
use crate::sets::{argmax_first, AffineFixSet, Projector};

pub const TENSOR_LEN: usize = 729;
pub const TENSOR_SHAPE: [usize; 3] = [9, 9, 9];

#[inline]
pub fn tensor_index(i: usize, j: usize, k: usize) -> usize {
    (i * 9 + j) * 9 + k
}

/// 9×9 grid of givens, 0 for blank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SudokuPuzzle {
    givens: [[u8; 9]; 9],
}

impl SudokuPuzzle {
    pub fn new(givens: [[u8; 9]; 9]) -> Result<Self> {
        if givens.iter().flatten().any(|&d| d > 9) {
            return Err(SplitError::InconsistentGivens("digit above 9".into()));
        }
        if let Some(msg) = first_conflict(&givens) {
            return Err(SplitError::InconsistentGivens(msg));
        }
        Ok(SudokuPuzzle { givens })
    }

    pub fn givens(&self) -> &[[u8; 9]; 9] {
        &self.givens
    }

    pub fn given_count(&self) -> usize {
        self.givens.iter().flatten().filter(|&&d| d != 0).count()
    }
}

impl FromStr for SudokuPuzzle {
    type Err = SplitError;

    /// 81 cells in row-major order: `1`–`9` for givens, `.` or `0` for blanks.
    /// Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cells: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cells.len() != 81 {
            return Err(SplitError::Parse(format!(
                "expected 81 cells, found {}",
                cells.len()
            )));
        }
        let mut givens = [[0u8; 9]; 9];
        for (n, c) in cells.into_iter().enumerate() {
            givens[n / 9][n % 9] = match c {
                '.' | '0' => 0,
                '1'..='9' => c as u8 - b'0',
                other => return Err(SplitError::Parse(format!("unexpected character {other:?}"))),
            };
        }
        SudokuPuzzle::new(givens)
    }
}

impl fmt::Display for SudokuPuzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.givens.iter().flatten() {
            if *d == 0 {
                write!(f, ".")?;
            } else {
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

fn units() -> Vec<[(usize, usize); 9]> {
    let mut units = Vec::with_capacity(27);
    for a in 0..9 {
        units.push(std::array::from_fn(|b| (a, b)));
        units.push(std::array::from_fn(|b| (b, a)));
        let (bi, bj) = (3 * (a / 3), 3 * (a % 3));
        units.push(std::array::from_fn(|b| (bi + b / 3, bj + b % 3)));
    }
    units
}

fn first_conflict(grid: &[[u8; 9]; 9]) -> Option<String> {
    for unit in units() {
        let mut seen = [false; 10];
        for (i, j) in unit {
            let d = grid[i][j] as usize;
            if d != 0 {
                if seen[d] {
                    return Some(format!(
                        "digit {d} repeated in the unit containing ({i},{j})"
                    ));
                }
                seen[d] = true;
            }
        }
    }
    None
}

/// Whether `grid` is a complete Sudoku solution agreeing with the puzzle's givens.
pub fn is_valid_solution(grid: &[[u8; 9]; 9], puzzle: &SudokuPuzzle) -> bool {
    let complete = grid.iter().flatten().all(|&d| (1..=9).contains(&d));
    let matches = grid
        .iter()
        .flatten()
        .zip(puzzle.givens.iter().flatten())
        .all(|(d, g)| *g == 0 || d == g);
    complete && matches && first_conflict(grid).is_none()
}

/// Which family of fibers a constraint snaps to basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberKind {
    /// `X[i,:,k]`
    Rows,
    /// `X[:,j,k]`
    Columns,
    /// `X[i,j,:]`
    Cells,
    /// `vec X[3a..3a+3, 3b..3b+3, k]`, vectorized by columns
    Subgrids,
}

impl FiberKind {
    pub const ALL: [FiberKind; 4] = [
        FiberKind::Rows,
        FiberKind::Columns,
        FiberKind::Cells,
        FiberKind::Subgrids,
    ];

    fn fibers(self) -> Vec<[usize; 9]> {
        let mut out = Vec::with_capacity(81);
        for a in 0..9 {
            for b in 0..9 {
                out.push(match self {
                    FiberKind::Rows => std::array::from_fn(|t| tensor_index(a, t, b)),
                    FiberKind::Columns => std::array::from_fn(|t| tensor_index(t, a, b)),
                    FiberKind::Cells => std::array::from_fn(|t| tensor_index(a, b, t)),
                    FiberKind::Subgrids => {
                        let (bi, bj) = (3 * (a / 3), 3 * (a % 3));
                        std::array::from_fn(|t| tensor_index(bi + t % 3, bj + t / 3, b))
                    }
                });
            }
        }
        out
    }
}

/// One of the four basis-vector constraints; projects each of its 81 disjoint fibers
/// onto `{e_1, ..., e_9}` with ties going to the lowest position in the fiber.
#[derive(Debug, Clone)]
pub struct FiberConstraint {
    kind: FiberKind,
    fibers: Vec<[usize; 9]>,
}

impl FiberConstraint {
    pub fn new(kind: FiberKind) -> Self {
        FiberConstraint {
            kind,
            fibers: kind.fibers(),
        }
    }

    pub fn kind(&self) -> FiberKind {
        self.kind
    }
}

impl Projector for FiberConstraint {
    fn dim(&self) -> usize {
        TENSOR_LEN
    }

    fn project_into(&self, x: &[f64], out: &mut [f64]) {
        for fiber in &self.fibers {
            let k = argmax_first(fiber.iter().map(|&idx| x[idx]));
            for (t, &idx) in fiber.iter().enumerate() {
                out[idx] = if t == k { 1.0 } else { 0.0 };
            }
        }
    }
}

/// The five constraint sets of a puzzle.
#[derive(Debug, Clone)]
pub struct SudokuEncoding {
    pub fibers: [FiberConstraint; 4],
    pub givens: AffineFixSet,
}

impl SudokuEncoding {
    /// Normal-cone operators in the order `C_1, ..., C_5` with constraint `last`
    /// (0-based) moved to the end. The reduced lift merges the last operator into its
    /// diagonal set, so `last = 4` (the givens) makes that set affine.
    pub fn operators_with_last(&self, last: usize) -> Result<Vec<Operator>> {
        if last > 4 {
            return Err(SplitError::InvalidParameter {
                name: "last",
                reason: format!("constraint index must be 0..=4, got {last}"),
            });
        }
        let mut ops: Vec<Operator> = self
            .fibers
            .iter()
            .map(|c| Arc::new(NormalCone(c.clone())) as Operator)
            .collect();
        ops.push(Arc::new(NormalCone(self.givens.clone())));
        let moved = ops.remove(last);
        ops.push(moved);
        Ok(ops)
    }

    /// Operators `C_1, ..., C_5` in natural order.
    pub fn operators(&self) -> Vec<Operator> {
        self.operators_with_last(4).expect("index in range")
    }
}

/// Encodes a puzzle as the five sets `C_1..C_5`.
pub fn sudoku_encode(puzzle: &SudokuPuzzle) -> Result<SudokuEncoding> {
    if let Some(msg) = first_conflict(&puzzle.givens) {
        return Err(SplitError::InconsistentGivens(msg));
    }
    let mut prescribed = Vec::new();
    for (i, row) in puzzle.givens.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d != 0 {
                prescribed.push((vec![i, j, d as usize - 1], 1.0));
            }
        }
    }
    Ok(SudokuEncoding {
        fibers: FiberKind::ALL.map(FiberConstraint::new),
        givens: AffineFixSet::new(TENSOR_SHAPE.to_vec(), &prescribed)?,
    })
}

/// Rounds a tensor to a grid (per-cell argmax, lowest digit on ties) and checks it.
pub fn sudoku_decode_validate(x: &[f64], puzzle: &SudokuPuzzle) -> ([[u8; 9]; 9], bool) {
    let grid = decode(x);
    let valid = is_valid_solution(&grid, puzzle);
    (grid, valid)
}

pub fn decode(x: &[f64]) -> [[u8; 9]; 9] {
    assert_eq!(x.len(), TENSOR_LEN, "sudoku tensor must have 729 entries");
    let mut grid = [[0u8; 9]; 9];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let base = tensor_index(i, j, 0);
            *cell = argmax_first(x[base..base + 9].iter().copied()) as u8 + 1;
        }
    }
    grid
}

/// Binary tensor of a filled grid.
pub fn grid_tensor(grid: &[[u8; 9]; 9]) -> Vec<f64> {
    let mut x = vec![0.0; TENSOR_LEN];
    for (i, row) in grid.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d != 0 {
                x[tensor_index(i, j, d as usize - 1)] = 1.0;
            }
        }
    }
    x
}
