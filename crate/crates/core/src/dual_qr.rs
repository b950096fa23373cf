//! QR decompositions of dual matrices.
//!
//! Every variant factors the standard part with a real kernel and then
//! recovers the infinitesimal factors in closed form. Writing
//! `B = Q_sᵀ·A_i·P_s`, the coupling equation `A_i·P_s = Q_s R_i + Q_i R_s`
//! is satisfied by
//!
//! ```text
//! Q_i = (I − Q_s Q_sᵀ)·A_i·P_s·R_s⁺ + Q_s·P
//! R_i = B − P·R_s
//! ```
//!
//! where `P` is skew-symmetric and `R_s⁺` is `R_s⁻¹` (thin), `R_s†`
//! (randomized or wide), or absent (full, where the projector vanishes).
//! The strictly-lower triangle of `P` is found column by column so that
//! `R_i` stays upper triangular; see [`build_skew_p`].

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dual::{DualMatrix, PartResiduals};
use crate::error::{Error, Result};
use crate::real::{self, pinv, qr_real, rank_tolerance, right_pinv_full_row_rank, Permutation, QrFactorsReal, SketchConfig};

/// Absolute tolerance scale for the existence condition of the randomized
/// variant: the residual must not exceed `EXISTENCE_TOLERANCE·(1 + ‖A_i‖_F)`.
pub const EXISTENCE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Full,
    FullPivoted,
    Thin,
    ThinPivoted,
    RandomizedPivoted,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Full => "dqr",
            Variant::FullPivoted => "dqrcp",
            Variant::Thin => "tdqr",
            Variant::ThinPivoted => "tdqrcp",
            Variant::RandomizedPivoted => "rdqrcp",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dqr" => Ok(Variant::Full),
            "dqrcp" => Ok(Variant::FullPivoted),
            "tdqr" => Ok(Variant::Thin),
            "tdqrcp" => Ok(Variant::ThinPivoted),
            "rdqrcp" => Ok(Variant::RandomizedPivoted),
            other => Err(Error::InvalidArgument(format!("unknown algorithm `{other}`"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs `variant` on `a`; `sketch` is only consulted by the randomized
/// variant and is required there.
pub fn decompose(a: &DualMatrix, variant: Variant, sketch: Option<&SketchConfig>) -> Result<DualQrFactors> {
    match variant {
        Variant::Full => dqr(a),
        Variant::FullPivoted => dqrcp(a),
        Variant::Thin => tdqr(a),
        Variant::ThinPivoted => tdqrcp(a),
        Variant::RandomizedPivoted => {
            let cfg = sketch.ok_or_else(|| Error::InvalidArgument("rdqrcp needs a target rank".into()))?;
            rdqrcp(a, cfg)
        }
    }
}

/// Dual QR factors: `A·perm = Q·R` in dual arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct DualQrFactors {
    pub q: DualMatrix,
    pub r: DualMatrix,
    pub perm: Permutation,
    /// Numerical rank of `R_s`.
    pub rank: usize,
    pub variant: Variant,
}

/// Skew-symmetric generator `P` together with its right-hand side `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewGenerator {
    pub p: DMatrix<f64>,
    pub rhs: DMatrix<f64>,
    pub dim: usize,
}

/// Solves for the strictly-lower triangle of the `dim x dim` skew matrix `P`
/// from `B = rhs` and the upper factor `r_s`:
///
/// ```text
/// p_j(j+1:d) = (b_j(j+1:d) − Σ_{t<j} r_s[t, j]·p_t(j+1:d)) / r_s[j, j]
/// ```
///
/// for the first `min(rank, dim − 1)` columns; later columns stay zero. The
/// upper triangle is the negated mirror and the diagonal is zero, so
/// `P + Pᵀ` vanishes bitwise.
pub fn build_skew_p(rhs: &DMatrix<f64>, r_s: &DMatrix<f64>, rank: usize, dim: usize) -> Result<SkewGenerator> {
    if rhs.nrows() != dim || r_s.nrows() < rank.min(dim) || rhs.ncols() != r_s.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "rhs {}x{}, r_s {}x{}, dim {dim}",
            rhs.nrows(),
            rhs.ncols(),
            r_s.nrows(),
            r_s.ncols()
        )));
    }
    let diag_len = r_s.nrows().min(r_s.ncols());
    let r_max = (0..diag_len).map(|j| r_s[(j, j)].abs()).fold(0.0, f64::max);
    let tol = rank_tolerance(dim, r_s.ncols(), r_max);
    let cols = rank.min(dim.saturating_sub(1)).min(r_s.ncols());

    let mut p = DMatrix::zeros(dim, dim);
    {
        let data = p.as_mut_slice();
        for j in 0..cols {
            let pivot = r_s[(j, j)];
            if pivot.abs() <= tol {
                return Err(Error::DegenerateDiagonal {
                    index: j,
                    value: pivot,
                    tolerance: tol,
                });
            }
            let (prev, rest) = data.split_at_mut(j * dim);
            let col = &mut rest[j + 1..dim];
            for (i, v) in col.iter_mut().enumerate() {
                *v = rhs[(j + 1 + i, j)];
            }
            for t in 0..j {
                let coeff = r_s[(t, j)];
                if coeff != 0.0 {
                    let pt = &prev[t * dim + j + 1..(t + 1) * dim];
                    for (v, x) in col.iter_mut().zip(pt) {
                        *v -= coeff * x;
                    }
                }
            }
            let inv = 1.0 / pivot;
            for v in col.iter_mut() {
                *v *= inv;
            }
        }
    }
    for j in 0..cols {
        for i in (j + 1)..dim {
            p[(j, i)] = -p[(i, j)];
        }
    }
    Ok(SkewGenerator {
        p,
        rhs: rhs.clone(),
        dim,
    })
}

/// How the projector term `(I − Q_sQ_sᵀ)·A_i·P_s·R_s⁺` is formed.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Projector {
    None,
    /// Square invertible upper `R_s`: triangular solve.
    Inverse,
    /// `R_s†`; `R_s` has full row rank.
    Pseudo,
}

fn zero_strict_lower(m: &mut DMatrix<f64>) {
    for c in 0..m.ncols() {
        for r in (c + 1)..m.nrows() {
            m[(r, c)] = 0.0;
        }
    }
}

fn right_pinv(r_s: &DMatrix<f64>) -> DMatrix<f64> {
    right_pinv_full_row_rank(r_s).unwrap_or_else(|| pinv(r_s))
}

fn assemble(
    a: &DualMatrix,
    std: QrFactorsReal,
    variant: Variant,
    projector: Projector,
    r_s_pinv: Option<DMatrix<f64>>,
) -> Result<DualQrFactors> {
    let QrFactorsReal { q: q_s, r: r_s, perm, rank } = std;
    let a_i_p = perm.apply_columns(a.infinitesimal());
    let dim = q_s.ncols();
    let b = q_s.transpose() * &a_i_p;
    let skew = build_skew_p(&b, &r_s, rank, dim)?;

    let mut q_i = &q_s * &skew.p;
    match projector {
        Projector::None => {}
        Projector::Inverse => {
            // X·R_s = (I − Q_sQ_sᵀ)A_iP_s, solved as R_sᵀ·Xᵀ = (…)ᵀ
            let resid = &a_i_p - &q_s * &b;
            let xt = r_s
                .tr_solve_upper_triangular(&resid.transpose())
                .ok_or(Error::RankDeficient {
                    rank,
                    required: r_s.ncols(),
                })?;
            q_i += xt.transpose();
        }
        Projector::Pseudo => {
            let resid = &a_i_p - &q_s * &b;
            let rp = r_s_pinv.unwrap_or_else(|| right_pinv(&r_s));
            q_i += resid * rp;
        }
    }
    let mut r_i = b - &skew.p * &r_s;
    zero_strict_lower(&mut r_i);

    Ok(DualQrFactors {
        q: DualMatrix::from_parts_unchecked(q_s, q_i),
        r: DualMatrix::from_parts_unchecked(r_s, r_i),
        perm,
        rank,
        variant,
    })
}

/// Full dual QR: `Q` is `m x m` dual orthogonal, `R` is `m x n` upper
/// triangular.
pub fn dqr(a: &DualMatrix) -> Result<DualQrFactors> {
    let std = qr_real(a.standard(), false, false);
    assemble(a, std, Variant::Full, Projector::None, None)
}

/// Full dual QR with column pivoting chosen on the standard part.
pub fn dqrcp(a: &DualMatrix) -> Result<DualQrFactors> {
    let std = qr_real(a.standard(), true, false);
    assemble(a, std, Variant::FullPivoted, Projector::None, None)
}

fn thin(a: &DualMatrix, pivot: bool) -> Result<DualQrFactors> {
    let (m, n) = a.shape();
    let std = qr_real(a.standard(), pivot, true);
    let required = m.min(n);
    if std.rank < required {
        return Err(Error::RankDeficient {
            rank: std.rank,
            required,
        });
    }
    let variant = if pivot { Variant::ThinPivoted } else { Variant::Thin };
    // wide inputs have a trapezoidal R_s, so the projector uses R_s†
    let projector = if m >= n { Projector::Inverse } else { Projector::Pseudo };
    assemble(a, std, variant, projector, None)
}

/// Thin dual QR: `Q` is `m x n` with dual-orthonormal columns and `R` is
/// `n x n` with positive standard diagonal. Requires `A_s` of full column
/// rank. Wide inputs of full row rank are accepted and produce `m x m` and
/// `m x n` factors.
pub fn tdqr(a: &DualMatrix) -> Result<DualQrFactors> {
    thin(a, false)
}

/// Thin dual QR with column pivoting chosen on the standard part.
pub fn tdqrcp(a: &DualMatrix) -> Result<DualQrFactors> {
    thin(a, true)
}

/// `‖(I − Q_sQ_sᵀ)·A_iP_s·(I − R_s†R_s)‖_F`, evaluated without forming the
/// `m x m` or `n x n` projectors.
pub fn existence_residual(q_s: &DMatrix<f64>, r_s: &DMatrix<f64>, a_i_permuted: &DMatrix<f64>) -> Result<f64> {
    let r_pinv = pinv(r_s);
    existence_residual_with(q_s, r_s, &r_pinv, a_i_permuted)
}

fn existence_residual_with(
    q_s: &DMatrix<f64>,
    r_s: &DMatrix<f64>,
    r_pinv: &DMatrix<f64>,
    a_i_permuted: &DMatrix<f64>,
) -> Result<f64> {
    if q_s.nrows() != a_i_permuted.nrows() || r_s.ncols() != a_i_permuted.ncols() || q_s.ncols() != r_s.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "q_s {}x{}, r_s {}x{}, a_i {}x{}",
            q_s.nrows(),
            q_s.ncols(),
            r_s.nrows(),
            r_s.ncols(),
            a_i_permuted.nrows(),
            a_i_permuted.ncols()
        )));
    }
    let left = a_i_permuted - q_s * (q_s.transpose() * a_i_permuted);
    let both = &left - (&left * r_pinv) * r_s;
    Ok(both.norm())
}

/// Randomized dual QRCP truncated to rank `k = cfg.target_rank`.
///
/// The existence condition is checked once; when it fails the
/// decomposition does not exist and
/// [`Error::ExistenceConditionViolated`] carries the residual.
pub fn rdqrcp(a: &DualMatrix, cfg: &SketchConfig) -> Result<DualQrFactors> {
    let std = real::rqrcp(a.standard(), cfg)?;
    let k = cfg.target_rank;
    if std.rank < k {
        return Err(Error::RankDeficient {
            rank: std.rank,
            required: k,
        });
    }
    let r_pinv = right_pinv(&std.r);
    let a_i_p = std.perm.apply_columns(a.infinitesimal());
    let residual = existence_residual_with(&std.q, &std.r, &r_pinv, &a_i_p)?;
    let tolerance = EXISTENCE_TOLERANCE * (1.0 + a.infinitesimal().norm());
    if residual > tolerance {
        return Err(Error::ExistenceConditionViolated { residual, tolerance });
    }
    assemble(a, std, Variant::RandomizedPivoted, Projector::Pseudo, Some(r_pinv))
}

/// Flips signs so the standard diagonal of `R` is nonnegative. The flip is
/// `Q ← Q·D`, `R ← D·R` with `D = diag(±1)`, which preserves every
/// defining identity.
pub fn normalize_signs(f: &mut DualQrFactors) {
    let d = f.r.nrows().min(f.r.ncols()).min(f.q.ncols());
    let (mut qs, mut qi) = std::mem::replace(&mut f.q, DualMatrix::zeros(0, 0)).into_parts();
    let (mut rs, mut ri) = std::mem::replace(&mut f.r, DualMatrix::zeros(0, 0)).into_parts();
    for j in 0..d {
        if rs[(j, j)] < 0.0 {
            qs.column_mut(j).neg_mut();
            qi.column_mut(j).neg_mut();
            rs.row_mut(j).neg_mut();
            ri.row_mut(j).neg_mut();
        }
    }
    f.q = DualMatrix::from_parts_unchecked(qs, qi);
    f.r = DualMatrix::from_parts_unchecked(rs, ri);
}

/// Defects of the identities a dual QR must satisfy, as absolute Frobenius
/// norms, plus the input norms used to scale them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorResiduals {
    /// `‖A_s·P − Q_sR_s‖_F`
    pub reconstruction: f64,
    /// `‖A_i·P − Q_sR_i − Q_iR_s‖_F`
    pub coupling: f64,
    /// `‖Q_sᵀQ_s − I‖_F` and `‖Q_sᵀQ_i + Q_iᵀQ_s‖_F`
    pub orthogonality: PartResiduals,
    /// strictly-lower triangles of `R_s` and `R_i`
    pub triangularity: PartResiduals,
    pub norm_standard: f64,
    pub norm_infinitesimal: f64,
}

impl FactorResiduals {
    /// Checks every residual against `tol`, scaled as
    /// `tol·‖A_s‖`, `tol·(‖A_i‖ + 1)`, `tol·dim` and exact zero triangles.
    pub fn within(&self, tol: f64, dim: usize) -> bool {
        self.reconstruction <= tol * self.norm_standard.max(f64::MIN_POSITIVE)
            && self.coupling <= tol * (self.norm_infinitesimal + 1.0)
            && self.orthogonality.standard <= tol * dim as f64
            && self.orthogonality.infinitesimal <= tol * dim as f64
            && self.triangularity.standard == 0.0
            && self.triangularity.infinitesimal == 0.0
    }
}

pub fn factor_residuals(a: &DualMatrix, f: &DualQrFactors) -> Result<FactorResiduals> {
    let ap = a.permute_columns(&f.perm);
    let qr = crate::dual::dmul(&f.q, &f.r)?;
    let diff = ap.sub(&qr)?;
    let orthogonality = crate::dual::structure_residuals(&f.q, crate::dual::StructureKind::ColumnsOrthogonal)?;
    let triangularity = crate::dual::structure_residuals(&f.r, crate::dual::StructureKind::UpperTriangular)?;
    Ok(FactorResiduals {
        reconstruction: diff.standard().norm(),
        coupling: diff.infinitesimal().norm(),
        orthogonality,
        triangularity,
        norm_standard: a.standard().norm(),
        norm_infinitesimal: a.infinitesimal().norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{giid, giid_dual, low_rank_dual};

    fn assert_factors(a: &DualMatrix, f: &DualQrFactors) {
        let res = factor_residuals(a, f).unwrap();
        let dim = a.nrows().max(a.ncols());
        assert!(res.within(1e-10, dim), "{res:?}");
    }

    #[test]
    fn skew_of_zero_rhs() {
        let r = DMatrix::<f64>::identity(3, 3);
        let g = build_skew_p(&DMatrix::zeros(3, 3), &r, 3, 3).unwrap();
        assert_eq!(g.p, DMatrix::<f64>::zeros(3, 3));
    }

    #[test]
    fn skew_two_by_two() {
        let r = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 0.0]);
        let b = DMatrix::from_row_slice(2, 2, &[0.3, 0.7, -2.5, 0.1]);
        let g = build_skew_p(&b, &r, 1, 2).unwrap();
        assert_eq!(g.p, DMatrix::from_row_slice(2, 2, &[0.0, 2.5, -2.5, 0.0]));
    }

    #[test]
    fn skew_is_bitwise_antisymmetric() {
        let f = qr_real(&giid(6, 4, 3), false, false);
        let b = giid(6, 4, 4);
        let g = build_skew_p(&b, &f.r, 4, 6).unwrap();
        let s = &g.p + g.p.transpose();
        assert!(s.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn skew_degenerate_pivot() {
        let r = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let err = build_skew_p(&giid(3, 3, 1), &r, 3, 3).unwrap_err();
        assert!(matches!(err, Error::DegenerateDiagonal { index: 1, .. }));
    }

    #[test]
    fn dqr_identity() {
        let f = dqr(&DualMatrix::identity(3)).unwrap();
        assert_eq!(f.q, DualMatrix::identity(3));
        assert_eq!(f.r, DualMatrix::identity(3));
    }

    #[test]
    fn zero_infinitesimal_gives_zero_infinitesimal_factors() {
        let a = DualMatrix::from_standard(giid(5, 3, 2)).unwrap();
        for f in [dqr(&a).unwrap(), dqrcp(&a).unwrap(), tdqr(&a).unwrap(), tdqrcp(&a).unwrap()] {
            assert_eq!(f.q.infinitesimal().amax(), 0.0);
            assert_eq!(f.r.infinitesimal().amax(), 0.0);
        }
        let f = rdqrcp(&a, &SketchConfig::new(3, 1)).unwrap();
        assert_eq!(f.q.infinitesimal().amax(), 0.0);
        assert_eq!(f.r.infinitesimal().amax(), 0.0);
    }

    #[test]
    fn full_variants_on_seeded_inputs() {
        for (m, n) in [(4, 3), (3, 4), (5, 5), (5, 3)] {
            let a = giid_dual(m, n, (m * 10 + n) as u64);
            let f = dqr(&a).unwrap();
            assert_eq!(f.q.shape(), (m, m));
            assert_eq!(f.r.shape(), (m, n));
            assert_factors(&a, &f);
            let f = dqrcp(&a).unwrap();
            assert_factors(&a, &f);
            for j in 1..m.min(n) {
                assert!(f.r.standard()[(j, j)].abs() <= f.r.standard()[(j - 1, j - 1)].abs());
            }
        }
    }

    #[test]
    fn dqrcp_zero_column_with_planted_infinitesimal() {
        // plant A_i = Q_s(R_i0 + P0 R_s)P_sᵀ so the coupling is solvable
        let mut s = giid(5, 3, 7);
        s.column_mut(0).fill(0.0);
        let std = qr_real(&s, true, false);
        let mut ri0 = giid(5, 3, 8);
        zero_strict_lower(&mut ri0);
        for r in 2..5 {
            ri0.row_mut(r).fill(0.0);
        }
        let w = giid(5, 5, 9);
        let mut p0 = &w - w.transpose();
        for c in 2..5 {
            for r in 2..5 {
                p0[(r, c)] = 0.0;
            }
        }
        let aip = &std.q * (&ri0 + &p0 * &std.r);
        let a_i = std.perm.inverse().apply_columns(&aip);
        let a = DualMatrix::new(s, a_i).unwrap();
        let f = dqrcp(&a).unwrap();
        assert_eq!(*f.perm.indices().last().unwrap(), 0);
        assert_eq!(f.rank, 2);
        assert_factors(&a, &f);
    }

    #[test]
    fn thin_square_matches_full_after_signs() {
        let a = giid_dual(5, 5, 12);
        let mut full = dqr(&a).unwrap();
        normalize_signs(&mut full);
        let thin = tdqr(&a).unwrap();
        assert!(full.q.max_abs_diff(&thin.q) <= 1e-10);
        assert!(full.r.max_abs_diff(&thin.r) <= 1e-10);
    }

    #[test]
    fn thin_variants() {
        let mut s = DMatrix::<f64>::zeros(4, 3);
        for j in 0..3 {
            s[(j, j)] = 1.0;
        }
        let a = DualMatrix::new(s, giid(4, 3, 2)).unwrap();
        let f = tdqr(&a).unwrap();
        assert_eq!(f.q.shape(), (4, 3));
        assert_eq!(f.r.shape(), (3, 3));
        assert_factors(&a, &f);

        let a = giid_dual(6, 3, 3);
        let f = tdqrcp(&a).unwrap();
        assert_factors(&a, &f);
        assert!((0..3).all(|j| f.r.standard()[(j, j)] > 0.0));

        let a = giid_dual(3, 6, 4);
        assert_factors(&a, &tdqr(&a).unwrap());
        assert_factors(&a, &tdqrcp(&a).unwrap());

        assert_eq!(
            tdqr(&DualMatrix::identity(3)).unwrap().q,
            DualMatrix::identity(3)
        );
        let f = tdqrcp(&DualMatrix::identity(3)).unwrap();
        assert!(f.perm.is_identity());
        assert_eq!(f.r, DualMatrix::identity(3));
    }

    #[test]
    fn thin_rank_deficient() {
        let mut s = giid(5, 3, 5);
        let c = s.column(0) + s.column(1);
        s.column_mut(2).copy_from(&c);
        let a = DualMatrix::new(s, giid(5, 3, 6)).unwrap();
        assert!(matches!(tdqrcp(&a), Err(Error::RankDeficient { rank: 2, required: 3 })));
        assert!(matches!(tdqr(&a), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn randomized_planted_low_rank() {
        let a = low_rank_dual(60, 30, 3, 17);
        let cfg = SketchConfig::new(3, 5);
        let f = rdqrcp(&a, &cfg).unwrap();
        assert_eq!(f.q.shape(), (60, 3));
        assert_eq!(f.r.shape(), (3, 30));
        let res = factor_residuals(&a, &f).unwrap();
        assert!(res.reconstruction <= 1e-8 * res.norm_standard);
        assert!(res.coupling <= 1e-8 * (1.0 + res.norm_infinitesimal));
        assert!(res.orthogonality.max() <= 1e-10 * 60.0);
        assert_eq!(rdqrcp(&a, &cfg).unwrap(), f);
    }

    #[test]
    fn randomized_existence_violated() {
        let base = low_rank_dual(40, 20, 3, 2);
        let a = DualMatrix::new(base.standard().clone(), giid(40, 20, 3)).unwrap();
        match rdqrcp(&a, &SketchConfig::new(3, 1)) {
            Err(Error::ExistenceConditionViolated { residual, tolerance }) => {
                assert!(residual > 1e3 * tolerance)
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn existence_residual_cases() {
        let std = qr_real(&giid(8, 3, 1), false, true);
        let zero = DMatrix::zeros(8, 3);
        assert_eq!(existence_residual(&std.q, &std.r, &zero).unwrap(), 0.0);
        let in_range = &std.q * giid(3, 3, 2);
        assert!(existence_residual(&std.q, &std.r, &in_range).unwrap() <= 1e-12);
        assert!(existence_residual(&std.q, &std.r, &giid(7, 3, 2)).is_err());

        // truncated: q_s 8x2, r_s 2x5; compare with explicit projectors
        let f = real::rqrcp(&giid(8, 5, 4), &SketchConfig::new(2, 3)).unwrap();
        let ai = giid(8, 5, 5);
        let left = DMatrix::<f64>::identity(8, 8) - &f.q * f.q.transpose();
        let right = DMatrix::<f64>::identity(5, 5) - pinv(&f.r) * &f.r;
        let oracle = (left * &ai * right).norm();
        let got = existence_residual(&f.q, &f.r, &ai).unwrap();
        assert!(oracle > 0.1);
        assert!((got - oracle).abs() <= 1e-12 * oracle);
    }
}
