//! First-order perturbation of the thin QR `Q` factor.
//!
//! For `A_s + τ·A_i` the exact change `ΔQ` of the (sign-normalized) thin
//! `Q` factor is compared against the infinitesimal part `Q_i` of the thin
//! dual QR of `A_s + A_i·ε`, and against two classical bounds:
//! `(1 + √2)·‖A_s†‖₂·‖A_i‖_F` and the sharper `√2·‖A_s†‖₂·‖A_i‖_F`.

use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dual::DualMatrix;
use crate::dual_qr::tdqr;
use crate::error::{Error, Result};
use crate::real::{qr_real, rank_tolerance, singular_values};

/// One row of a perturbation table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationRecord {
    pub tau: f64,
    pub norm_ai: f64,
    pub norm_dq_empirical: f64,
    pub norm_qi: f64,
    pub bound_stewart: f64,
    pub bound_sun: f64,
}

/// Upper-triangular 8x5 test matrix with three zero rows.
pub fn reference_standard() -> DMatrix<f64> {
    #[rustfmt::skip]
    let rows = [
        1.0, -2.0, 1.0, 2.0, 3.0,
        0.0, 2.0, 4.0, 1.0, -5.0,
        0.0, 0.0, 3.0, -1.0, 2.0,
        0.0, 0.0, 0.0, 4.0, 1.0,
        0.0, 0.0, 0.0, 0.0, 5.0,
        0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0,
    ];
    DMatrix::from_row_slice(8, 5, &rows)
}

/// Perturbation direction paired with [`reference_standard`], before
/// scaling by `τ`.
pub fn reference_direction() -> DMatrix<f64> {
    #[rustfmt::skip]
    let rows = [
        0.2, -0.5, 0.3, 0.1, 0.4,
        -0.1, 0.4, 0.1, -0.3, 0.2,
        0.5, 0.7, -0.2, 0.1, 0.6,
        0.3, -0.6, 0.1, -0.1, 0.2,
        0.2, 0.1, 0.7, 0.3, -0.4,
        0.4, 0.8, -0.2, 0.1, 0.3,
        0.6, -0.1, -0.5, 0.1, -0.2,
        0.1, -0.3, 0.2, 0.6, 0.7,
    ];
    DMatrix::from_row_slice(8, 5, &rows)
}

/// `‖A_s†‖₂ = 1/σ_min(A_s)`; fails unless `A_s` has full column rank.
fn pinv_spectral_norm(a_s: &DMatrix<f64>) -> Result<f64> {
    let (m, n) = a_s.shape();
    if m < n {
        return Err(Error::RankDeficient { rank: m, required: n });
    }
    let s = singular_values(a_s);
    let smin = s.last().copied().unwrap_or(0.0);
    let tol = rank_tolerance(m, n, s.first().copied().unwrap_or(0.0));
    if smin <= tol || n == 0 {
        let rank = s.iter().filter(|&&x| x > tol).count();
        return Err(Error::RankDeficient { rank, required: n });
    }
    Ok(1.0 / smin)
}

/// Returns `(bound_stewart, bound_sun, ‖a_i‖_F)`.
pub fn bounds(a_s: &DMatrix<f64>, a_i: &DMatrix<f64>) -> Result<(f64, f64, f64)> {
    if a_s.shape() != a_i.shape() {
        return Err(Error::DimensionMismatch(format!(
            "a_s is {}x{}, a_i is {}x{}",
            a_s.nrows(),
            a_s.ncols(),
            a_i.nrows(),
            a_i.ncols()
        )));
    }
    let g = pinv_spectral_norm(a_s)?;
    let norm_ai = a_i.norm();
    Ok(((1.0 + SQRT_2) * g * norm_ai, SQRT_2 * g * norm_ai, norm_ai))
}

/// Positive-diagonal thin `Q` of a full-column-rank matrix.
fn thin_q(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let f = qr_real(a, false, true);
    if f.rank < a.ncols() {
        return Err(Error::RankDeficient {
            rank: f.rank,
            required: a.ncols(),
        });
    }
    Ok(f.q)
}

pub fn empirical_record(a_s: &DMatrix<f64>, a_i_base: &DMatrix<f64>, tau: f64) -> Result<PerturbationRecord> {
    let a_i = a_i_base * tau;
    let (bound_stewart, bound_sun, norm_ai) = bounds(a_s, &a_i)?;
    let q0 = thin_q(a_s)?;
    let q1 = thin_q(&(a_s + &a_i))?;
    let f = tdqr(&DualMatrix::new(a_s.clone(), a_i)?)?;
    Ok(PerturbationRecord {
        tau,
        norm_ai,
        norm_dq_empirical: (q1 - q0).norm(),
        norm_qi: f.q.infinitesimal().norm(),
        bound_stewart,
        bound_sun,
    })
}
