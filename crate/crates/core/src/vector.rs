//! Dense vectors and block vectors.
//!
//! [`Vector`] is a point of the base space; [`BlockVector`] is an ordered tuple of
//! equal-dimension vectors, i.e. a point of a product space. Both reject NaN and
//! infinite entries on construction.

use std::ops::{Deref, Index};

use crate::error::{check_dim, check_finite, Result, SplitError};

/// Finite-valued dense real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(SplitError::Empty("vector"));
        }
        check_finite(&entries)?;
        Ok(Vector(entries))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Vector(vec![0.0; dim])
    }

    pub fn filled(dim: usize, value: f64) -> Result<Self> {
        Vector::new(vec![value; dim])
    }

    /// Wraps entries that are known to be finite (produced by the crate's own arithmetic).
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(!entries.is_empty());
        Vector(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        distance(&self.0, &other.0)
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = SplitError;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Vector::new(v)
    }
}

impl TryFrom<&[f64]> for Vector {
    type Error = SplitError;

    fn try_from(v: &[f64]) -> Result<Self> {
        Vector::new(v.to_vec())
    }
}

/// Ordered tuple of vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    blocks: Vec<Vector>,
}

impl BlockVector {
    pub fn new(blocks: Vec<Vector>) -> Result<Self> {
        let first = blocks.first().ok_or(SplitError::Empty("block vector"))?;
        let dim = first.dim();
        for b in &blocks {
            check_dim(dim, b.dim())?;
        }
        Ok(BlockVector { blocks })
    }

    /// Builds a block vector from raw rows, validating finiteness.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let blocks = rows
            .into_iter()
            .map(Vector::new)
            .collect::<Result<Vec<_>>>()?;
        BlockVector::new(blocks)
    }

    pub(crate) fn from_raw(blocks: Vec<Vec<f64>>) -> Self {
        BlockVector {
            blocks: blocks.into_iter().map(Vector::from_raw).collect(),
        }
    }

    /// The diagonal embedding `(x, ..., x)` with `count` copies.
    pub fn diagonal(x: &Vector, count: usize) -> Self {
        assert!(count > 0, "block count must be positive");
        BlockVector {
            blocks: vec![x.clone(); count],
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_dim(&self) -> usize {
        self.blocks[0].dim()
    }

    pub fn blocks(&self) -> &[Vector] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vector> {
        self.blocks
    }

    /// Arithmetic mean of the blocks.
    pub fn mean(&self) -> Vector {
        let mut m = vec![0.0; self.block_dim()];
        for b in &self.blocks {
            axpy(1.0, b, &mut m);
        }
        scale(1.0 / self.blocks.len() as f64, &mut m);
        Vector::from_raw(m)
    }

    /// True when every block is bit-identical to the first.
    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|b| b == &self.blocks[0])
    }

    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(|b| dot(b, b)).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &BlockVector) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let d = distance(a, b);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &BlockVector) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| dot(a, b))
            .sum()
    }
}

impl Index<usize> for BlockVector {
    type Output = Vector;

    fn index(&self, i: usize) -> &Vector {
        &self.blocks[i]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `y += alpha * x`
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn scale(alpha: f64, y: &mut [f64]) {
    for yi in y.iter_mut() {
        *yi *= alpha;
    }
}
