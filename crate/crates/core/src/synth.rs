//! Seeded synthetic inputs: GIID matrices and planted low-rank dual products.
//!
//! Entries are standard normal draws from a ChaCha8 stream keyed by the seed,
//! filled in row-major order. The same seed gives the same matrix on every
//! platform.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dual::DualMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fills a `rows x cols` matrix with standard normal draws, row by row.
pub fn giid_from(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = StandardNormal.sample(rng);
        }
    }
    m
}

pub fn giid(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
    giid_from(rows, cols, &mut rng(seed))
}

/// GIID dual matrix; the standard part is drawn before the infinitesimal part.
pub fn giid_dual(rows: usize, cols: usize, seed: u64) -> DualMatrix {
    let mut g = rng(seed);
    let s = giid_from(rows, cols, &mut g);
    let i = giid_from(rows, cols, &mut g);
    DualMatrix::from_parts_unchecked(s, i)
}

/// `L·R` with GIID dual factors `L: m x r` and `R: r x n`.
pub fn low_rank_dual(rows: usize, cols: usize, rank: usize, seed: u64) -> DualMatrix {
    let mut g = rng(seed);
    let ls = giid_from(rows, rank, &mut g);
    let li = giid_from(rows, rank, &mut g);
    let rs = giid_from(rank, cols, &mut g);
    let ri = giid_from(rank, cols, &mut g);
    let l = DualMatrix::from_parts_unchecked(ls, li);
    let r = DualMatrix::from_parts_unchecked(rs, ri);
    crate::dual::dmul(&l, &r).expect("factor shapes agree")
}
