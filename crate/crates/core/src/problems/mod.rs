//! Benchmark problem families and seeded starting points.

pub mod heron;
pub mod sudoku;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::BlockVector;

pub use heron::{generate_heron, generate_heron_with, CenterModel, HeronInstance};
pub use sudoku::{sudoku_decode_validate, sudoku_encode, SudokuEncoding, SudokuPuzzle};

/// `blocks` vectors of dimension `dim` with entries uniform in [0, 1).
pub fn random_start(seed: u64, blocks: usize, dim: usize) -> BlockVector {
    assert!(blocks > 0 && dim > 0, "start shape must be nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..blocks)
        .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
        .collect();
    BlockVector::from_raw(rows)
}

/// Derives an independent stream seed from a master seed and a stream tag (SplitMix64).
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
