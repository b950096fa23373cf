//! Dual numbers and dense dual matrices under `ε² = 0`.
//!
//! A dual matrix `A = A_s + A_i ε` is stored as two real matrices of equal
//! shape. Every operation here works on the parts separately, so the
//! product rule `(A_s + A_i ε)(B_s + B_i ε) = A_s B_s + (A_s B_i + A_i B_s) ε`
//! is exact in the representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Permutation;

/// A dual number `s + i ε`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualScalar {
    pub s: f64,
    pub i: f64,
}

impl DualScalar {
    pub const fn new(s: f64, i: f64) -> Self {
        Self { s, i }
    }

    /// True when the standard part is nonzero.
    pub fn is_appreciable(&self) -> bool {
        self.s != 0.0
    }

    /// Inverse of an appreciable dual number: `1/s - (i/s²) ε`.
    pub fn recip(self) -> Option<Self> {
        if !self.is_appreciable() {
            return None;
        }
        Some(Self::new(1.0 / self.s, -self.i / (self.s * self.s)))
    }
}

impl Add for DualScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.s + rhs.s, self.i + rhs.i)
    }
}

impl Sub for DualScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.s - rhs.s, self.i - rhs.i)
    }
}

impl Mul for DualScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.s * rhs.s, self.s * rhs.i + self.i * rhs.s)
    }
}

impl Neg for DualScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.s, -self.i)
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.s, self.i)
    }
}

/// Dense dual matrix `A_s + A_i ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMatrix {
    standard: DMatrix<f64>,
    infinitesimal: DMatrix<f64>,
}

/// Frobenius-norm defects reported separately for the two parts.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PartResiduals {
    pub standard: f64,
    pub infinitesimal: f64,
}

impl PartResiduals {
    pub fn max(&self) -> f64 {
        self.standard.max(self.infinitesimal)
    }
}

/// Structural property checked by [`structure_residuals`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Orthogonal,
    ColumnsOrthogonal,
    UpperTriangular,
    Diagonal,
}

fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            if !m[(r, c)].is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}

impl DualMatrix {
    pub fn new(standard: DMatrix<f64>, infinitesimal: DMatrix<f64>) -> Result<Self> {
        if standard.shape() != infinitesimal.shape() {
            return Err(Error::DimensionMismatch(format!(
                "standard part is {}x{} but infinitesimal part is {}x{}",
                standard.nrows(),
                standard.ncols(),
                infinitesimal.nrows(),
                infinitesimal.ncols()
            )));
        }
        check_finite(&standard)?;
        check_finite(&infinitesimal)?;
        Ok(Self {
            standard,
            infinitesimal,
        })
    }

    /// Builds from parts that are known to be shape-compatible and finite,
    /// e.g. results of arithmetic on validated inputs.
    pub(crate) fn from_parts_unchecked(standard: DMatrix<f64>, infinitesimal: DMatrix<f64>) -> Self {
        debug_assert_eq!(standard.shape(), infinitesimal.shape());
        Self {
            standard,
            infinitesimal,
        }
    }

    pub fn from_standard(standard: DMatrix<f64>) -> Result<Self> {
        let zero = DMatrix::zeros(standard.nrows(), standard.ncols());
        Self::new(standard, zero)
    }

    pub fn from_row_slices(m: usize, n: usize, standard: &[f64], infinitesimal: &[f64]) -> Result<Self> {
        if standard.len() != m * n || infinitesimal.len() != m * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries per part",
                m * n
            )));
        }
        Self::new(
            DMatrix::from_row_slice(m, n, standard),
            DMatrix::from_row_slice(m, n, infinitesimal),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_parts_unchecked(DMatrix::identity(n, n), DMatrix::zeros(n, n))
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self::from_parts_unchecked(DMatrix::zeros(m, n), DMatrix::zeros(m, n))
    }

    pub fn standard(&self) -> &DMatrix<f64> {
        &self.standard
    }

    pub fn infinitesimal(&self) -> &DMatrix<f64> {
        &self.infinitesimal
    }

    pub fn into_parts(self) -> (DMatrix<f64>, DMatrix<f64>) {
        (self.standard, self.infinitesimal)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.standard.shape()
    }

    pub fn nrows(&self) -> usize {
        self.standard.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.standard.ncols()
    }

    pub fn get(&self, r: usize, c: usize) -> DualScalar {
        DualScalar::new(self.standard[(r, c)], self.infinitesimal[(r, c)])
    }

    pub fn mul(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        dmul(self, rhs)
    }

    pub fn transpose(&self) -> DualMatrix {
        dtranspose(self)
    }

    pub fn sub(&self, rhs: &DualMatrix) -> Result<DualMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self::from_parts_unchecked(
            &self.standard - &rhs.standard,
            &self.infinitesimal - &rhs.infinitesimal,
        ))
    }

    /// Scales the infinitesimal part only: `A_s + t A_i ε`.
    pub fn scale_infinitesimal(&self, t: f64) -> DualMatrix {
        Self::from_parts_unchecked(self.standard.clone(), &self.infinitesimal * t)
    }

    /// `A·P` for a column permutation `P`, applied to both parts.
    pub fn permute_columns(&self, perm: &Permutation) -> DualMatrix {
        Self::from_parts_unchecked(perm.apply_columns(&self.standard), perm.apply_columns(&self.infinitesimal))
    }

    /// Per-part Frobenius norms.
    pub fn norms(&self) -> PartResiduals {
        PartResiduals {
            standard: self.standard.norm(),
            infinitesimal: self.infinitesimal.norm(),
        }
    }

    /// Largest entrywise difference over both parts.
    pub fn max_abs_diff(&self, other: &DualMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape());
        let s = (&self.standard - &other.standard).amax();
        let i = (&self.infinitesimal - &other.infinitesimal).amax();
        s.max(i)
    }
}

impl fmt::Display for DualMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "standard:{}infinitesimal:{}", self.standard, self.infinitesimal)
    }
}

/// Dual matrix product.
pub fn dmul(a: &DualMatrix, b: &DualMatrix) -> Result<DualMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let s = &a.standard * &b.standard;
    let mut i = &a.standard * &b.infinitesimal;
    i.gemm(1.0, &a.infinitesimal, &b.standard, 1.0);
    Ok(DualMatrix::from_parts_unchecked(s, i))
}

pub fn dtranspose(a: &DualMatrix) -> DualMatrix {
    DualMatrix::from_parts_unchecked(a.standard.transpose(), a.infinitesimal.transpose())
}

fn norm1(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.abs().sum()).fold(0.0, f64::max)
}

/// `C⁻¹ = C_s⁻¹ - C_s⁻¹ C_i C_s⁻¹ ε`.
///
/// Fails with [`Error::SingularStandardPart`] when the reciprocal 1-norm
/// condition number of `C_s` falls below `n·eps`.
pub fn dinverse(c: &DualMatrix) -> Result<DualMatrix> {
    let (m, n) = c.shape();
    if m != n {
        return Err(Error::ShapeMismatch {
            kind: "inverse",
            rows: m,
            cols: n,
        });
    }
    let inv = c
        .standard
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::SingularStandardPart { rcond: 0.0 })?;
    let denom = norm1(&c.standard) * norm1(&inv);
    let rcond = if denom > 0.0 && denom.is_finite() { 1.0 / denom } else { 0.0 };
    if rcond < n as f64 * f64::EPSILON {
        return Err(Error::SingularStandardPart { rcond });
    }
    let inf = -(&inv * &c.infinitesimal * &inv);
    Ok(DualMatrix::from_parts_unchecked(inv, inf))
}

fn strictly_lower_norm(m: &DMatrix<f64>) -> f64 {
    let mut acc = 0.0;
    for c in 0..m.ncols() {
        for r in (c + 1)..m.nrows() {
            acc += m[(r, c)] * m[(r, c)];
        }
    }
    acc.sqrt()
}

fn off_diagonal_norm(m: &DMatrix<f64>) -> f64 {
    let mut acc = 0.0;
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            if r != c {
                acc += m[(r, c)] * m[(r, c)];
            }
        }
    }
    acc.sqrt()
}

/// Defects of the defining conditions of a structured dual matrix.
///
/// Orthogonal and columns-orthogonal report `‖A_sᵀA_s − I‖_F` and
/// `‖A_sᵀA_i + A_iᵀA_s‖_F`; triangular and diagonal report the norms of
/// the entries that must vanish in each part.
pub fn structure_residuals(a: &DualMatrix, kind: StructureKind) -> Result<PartResiduals> {
    let (m, n) = a.shape();
    let shape_err = || Error::ShapeMismatch {
        kind: match kind {
            StructureKind::Orthogonal => "orthogonal",
            StructureKind::ColumnsOrthogonal => "columns-orthogonal",
            StructureKind::UpperTriangular => "upper-triangular",
            StructureKind::Diagonal => "diagonal",
        },
        rows: m,
        cols: n,
    };
    match kind {
        StructureKind::Orthogonal | StructureKind::ColumnsOrthogonal => {
            if (kind == StructureKind::Orthogonal && m != n) || m < n {
                return Err(shape_err());
            }
            let s = a.standard.transpose() * &a.standard - DMatrix::<f64>::identity(n, n);
            let mut i = a.standard.transpose() * &a.infinitesimal;
            i += i.transpose();
            Ok(PartResiduals {
                standard: s.norm(),
                infinitesimal: i.norm(),
            })
        }
        StructureKind::UpperTriangular => Ok(PartResiduals {
            standard: strictly_lower_norm(&a.standard),
            infinitesimal: strictly_lower_norm(&a.infinitesimal),
        }),
        StructureKind::Diagonal => {
            if m != n {
                return Err(shape_err());
            }
            Ok(PartResiduals {
                standard: off_diagonal_norm(&a.standard),
                infinitesimal: off_diagonal_norm(&a.infinitesimal),
            })
        }
    }
}
