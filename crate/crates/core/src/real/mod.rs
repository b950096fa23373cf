//! Real-matrix kernels consumed by the dual algorithms.

mod pinv;
mod qr;
mod sketch;
mod sylvester;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

pub use pinv::{pinv, right_pinv_full_row_rank, singular_values};
pub use qr::{qr_real, QrFactorsReal};
pub use sketch::{gaussian_sketch, rqrcp, SketchConfig, DEFAULT_OVERSAMPLING};
pub use sylvester::{sylvester_general, SylvesterSolution, SYLVESTER_TOLERANCE};

/// Column permutation stored as the list of source columns: column `j` of
/// `A·P` is column `perm[j]` of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Validates that `indices` is a permutation of `0..len`.
    pub fn from_indices(indices: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; indices.len()];
        for &i in &indices {
            if i >= indices.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self(indices))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &p)| j == p)
    }

    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
    }

    /// `A·P`.
    pub fn apply_columns(&self, a: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(a.ncols(), self.len(), "permutation length must match column count");
        let m = a.nrows();
        let mut out = DMatrix::zeros(m, self.len());
        for (j, &src) in self.0.iter().enumerate() {
            out.column_mut(j).copy_from(&a.column(src));
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (j, &p) in self.0.iter().enumerate() {
            inv[p] = j;
        }
        Self(inv)
    }

    /// 1-based indices, the usual mathematical convention.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut p = DMatrix::zeros(n, n);
        for (j, &src) in self.0.iter().enumerate() {
            p[(src, j)] = 1.0;
        }
        p
    }
}

/// Rank tolerance for an upper-triangular factor: `max(m, n)·eps·|r₁₁|`,
/// where `r₁₁` is the largest diagonal magnitude.
pub fn rank_tolerance(m: usize, n: usize, r_max: f64) -> f64 {
    m.max(n) as f64 * f64::EPSILON * r_max
}

/// Number of diagonal entries of `r` above the rank tolerance.
pub fn numerical_rank(r: &DMatrix<f64>, m: usize, n: usize) -> usize {
    let d = r.nrows().min(r.ncols());
    let r_max = (0..d).map(|j| r[(j, j)].abs()).fold(0.0, f64::max);
    if r_max == 0.0 {
        return 0;
    }
    let tol = rank_tolerance(m, n, r_max);
    (0..d).filter(|&j| r[(j, j)].abs() > tol).count()
}
