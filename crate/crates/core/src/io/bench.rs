//! Wall-clock benchmark of the dual QR variants.
//!
//! Dense inputs are GIID dual matrices. The randomized variant is timed on
//! a planted low-rank input `L·R` (GIID dual factors of inner dimension
//! `k`), on which its existence condition holds.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dual_qr::{decompose, Variant};
use crate::error::{Error, Result};
use crate::real::SketchConfig;
use crate::synth::{giid_dual, low_rank_dual};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub m: usize,
    pub n: usize,
    /// 0 when the algorithm takes no target rank
    pub k: usize,
    pub repetition: usize,
    pub seconds: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSize {
    pub m: usize,
    pub n: usize,
    pub k: Option<usize>,
}

/// Parses `MxN` or `MxN+K`, comma separated.
pub fn parse_sizes(s: &str) -> Result<Vec<BenchSize>> {
    let bad = |t: &str| Error::InvalidArgument(format!("size `{t}` is not of the form MxN or MxN+K"));
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (dims, k) = match t.split_once('+') {
                Some((d, k)) => (d, Some(k.parse::<usize>().map_err(|_| bad(t))?)),
                None => (t, None),
            };
            let (m, n) = dims.split_once(['x', 'X']).ok_or_else(|| bad(t))?;
            let m: usize = m.parse().map_err(|_| bad(t))?;
            let n: usize = n.parse().map_err(|_| bad(t))?;
            if m == 0 || n == 0 || k == Some(0) {
                return Err(bad(t));
            }
            Ok(BenchSize { m, n, k })
        })
        .collect()
}

/// Default target rank when a size carries none: a tenth of the smaller
/// dimension, at least 1.
fn target_rank(size: &BenchSize) -> usize {
    size.k.unwrap_or((size.m.min(size.n) / 10).max(1))
}

/// Times every algorithm on every size, `reps` times each, sequentially.
/// Inputs are generated once per (size, algorithm) from `seed`.
pub fn run_bench(algos: &[Variant], sizes: &[BenchSize], reps: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::with_capacity(algos.len() * sizes.len() * reps);
    for size in sizes {
        for &algo in algos {
            let (input, k, cfg) = if algo == Variant::RandomizedPivoted {
                let k = target_rank(size);
                (low_rank_dual(size.m, size.n, k, seed), k, Some(SketchConfig::new(k, seed)))
            } else {
                (giid_dual(size.m, size.n, seed), 0, None)
            };
            for repetition in 0..reps {
                let start = Instant::now();
                let f = decompose(&input, algo, cfg.as_ref())?;
                let seconds = start.elapsed().as_secs_f64().max(1e-9);
                std::hint::black_box(&f);
                out.push(BenchRecord {
                    algorithm: algo.name().to_string(),
                    m: size.m,
                    n: size.n,
                    k,
                    repetition,
                    seconds,
                    seed,
                });
            }
        }
    }
    Ok(out)
}

pub fn write_csv<W: Write>(mut w: W, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(w, "algorithm,m,n,k,repetition,seconds,seed")?;
    for r in records {
        writeln!(w, "{},{},{},{},{},{:.9},{}", r.algorithm, r.m, r.n, r.k, r.repetition, r.seconds, r.seed)?;
    }
    Ok(())
}

/// Median of the `seconds` of records matching `algorithm`, `m`, `n`.
pub fn median(records: &[BenchRecord], algorithm: &str, m: usize, n: usize) -> Option<f64> {
    let mut v: Vec<f64> = records
        .iter()
        .filter(|r| r.algorithm == algorithm && r.m == m && r.n == n)
        .map(|r| r.seconds)
        .collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let h = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[h] } else { 0.5 * (v[h - 1] + v[h]) })
}
