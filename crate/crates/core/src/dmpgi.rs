//! Dual Moore-Penrose generalized inverse.

use serde::{Deserialize, Serialize};

use crate::dual::{dmul, dtranspose, DualMatrix, PartResiduals};
use crate::dual_qr::tdqr;
use crate::error::{Error, Result};

/// Per-part Frobenius defects of the four Penrose conditions
/// `AGA = A`, `GAG = G`, `(AG)ᵀ = AG`, `(GA)ᵀ = GA`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenroseReport {
    pub residuals: [PartResiduals; 4],
}

impl PenroseReport {
    pub fn max(&self) -> f64 {
        self.residuals.iter().map(PartResiduals::max).fold(0.0, f64::max)
    }
}

/// `A† = R⁻¹Qᵀ` evaluated in dual arithmetic from the thin dual QR, i.e.
///
/// ```text
/// A†_s = R_s⁻¹Q_sᵀ
/// A†_i = R_s⁻¹Q_iᵀ − R_s⁻¹R_iR_s⁻¹Q_sᵀ
/// ```
///
/// Tall inputs need `A_s` of full column rank. Wide inputs go through
/// `(Aᵀ)† = (A†)ᵀ` and need full row rank.
pub fn dmpgi(a: &DualMatrix) -> Result<DualMatrix> {
    let (m, n) = a.shape();
    if m < n {
        let g = tall(&dtranspose(a)).map_err(|e| match e {
            Error::RankDeficient { rank, .. } => Error::RankDeficient { rank, required: m },
            other => other,
        })?;
        return Ok(dtranspose(&g));
    }
    tall(a)
}

fn tall(a: &DualMatrix) -> Result<DualMatrix> {
    let f = tdqr(a)?;
    let (qs, qi) = f.q.into_parts();
    let (rs, ri) = f.r.into_parts();
    let n = rs.nrows();
    let singular = || Error::RankDeficient { rank: 0, required: n };

    // R_s⁻¹ applied on the left through triangular solves
    let g_s = rs.solve_upper_triangular(&qs.transpose()).ok_or_else(singular)?;
    let t = rs.solve_upper_triangular(&qi.transpose()).ok_or_else(singular)?;
    let u = rs.solve_upper_triangular(&(&ri * &g_s)).ok_or_else(singular)?;
    Ok(DualMatrix::from_parts_unchecked(g_s, t - u))
}

pub fn penrose_residuals(a: &DualMatrix, g: &DualMatrix) -> Result<PenroseReport> {
    let (m, n) = a.shape();
    if g.shape() != (n, m) {
        return Err(Error::DimensionMismatch(format!(
            "G must be {n}x{m}, got {}x{}",
            g.nrows(),
            g.ncols()
        )));
    }
    let ag = dmul(a, g)?;
    let ga = dmul(g, a)?;
    let c1 = dmul(&ag, a)?.sub(a)?;
    let c2 = dmul(&ga, g)?.sub(g)?;
    let c3 = dtranspose(&ag).sub(&ag)?;
    let c4 = dtranspose(&ga).sub(&ga)?;
    Ok(PenroseReport {
        residuals: [c1.norms(), c2.norms(), c3.norms(), c4.norms()],
    })
}
