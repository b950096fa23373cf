//! Single-sample randomized QR with column pivoting.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{numerical_rank, qr_real, QrFactorsReal};
use crate::error::{Error, Result};
use crate::synth;

pub const DEFAULT_OVERSAMPLING: usize = 8;

/// Target rank `k`, oversampling `p` and seed of the Gaussian sketch.
/// The sketch has `l = k + p` rows, capped at the row count of the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SketchConfig {
    pub target_rank: usize,
    pub oversampling: usize,
    pub seed: u64,
}

impl SketchConfig {
    pub fn new(target_rank: usize, seed: u64) -> Self {
        Self {
            target_rank,
            oversampling: DEFAULT_OVERSAMPLING,
            seed,
        }
    }

    pub fn with_oversampling(mut self, p: usize) -> Self {
        self.oversampling = p;
        self
    }

    /// Sample rank for an input with `m` rows.
    pub fn sample_rank(&self, m: usize) -> usize {
        (self.target_rank + self.oversampling).min(m)
    }
}

/// `l x m` GIID compression matrix for `seed`, filled row by row.
pub fn gaussian_sketch(l: usize, m: usize, seed: u64) -> DMatrix<f64> {
    synth::giid(l, m, seed)
}

/// Randomized truncated QRCP: `A·perm ≈ q·r` with `q: m×k`, `r: k×n`.
///
/// The permutation comes from pivoted QR of the sketch `ΩA`; `q` and the
/// leading block of `r` from a thin QR of the first `k` permuted columns,
/// and the trailing block from `qᵀ` applied to the remaining columns.
pub fn rqrcp(a: &DMatrix<f64>, cfg: &SketchConfig) -> Result<QrFactorsReal> {
    let (m, n) = a.shape();
    let k = cfg.target_rank;
    if k < 1 || k > m.min(n) {
        return Err(Error::InvalidArgument(format!(
            "target rank {k} must lie in 1..={}",
            m.min(n)
        )));
    }
    let l = cfg.sample_rank(m);
    let omega = gaussian_sketch(l, m, cfg.seed);
    let sample = &omega * a;
    let perm = qr_real(&sample, true, true).perm;

    let ap = perm.apply_columns(a);
    let lead = qr_real(&ap.columns(0, k).clone_owned(), false, true);
    let q = lead.q;
    let mut r = DMatrix::zeros(k, n);
    r.view_mut((0, 0), (k, k)).copy_from(&lead.r);
    if n > k {
        let r12 = q.transpose() * ap.columns(k, n - k);
        r.view_mut((0, k), (k, n - k)).copy_from(&r12);
    }
    let rank = numerical_rank(&lead.r, m, n);
    Ok(QrFactorsReal { q, r, perm, rank })
}
