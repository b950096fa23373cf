use nalgebra::DMatrix;

use super::pinv;
use crate::error::{Error, Result};

/// Relative tolerance on `‖(I − AA†)C(I − B†B)‖_F / (1 + ‖C‖_F)` below which
/// `AX − YB = C` is declared solvable.
pub const SYLVESTER_TOLERANCE: f64 = 1e-9;

/// General solution of `AX − YB = C` for the supplied free parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterSolution {
    pub x: DMatrix<f64>,
    pub y: DMatrix<f64>,
    pub solvable: bool,
    pub condition_residual: f64,
}

/// Solves `AX − YB = C` with `A: m×k`, `B: l×n`, `C: m×n`.
///
/// `X = A†C + A†ZB + (I − A†A)W` and
/// `Y = −(I − AA†)CB† + Z − (I − AA†)ZBB†`, where `Z: m×l` and `W: k×n`
/// default to zero. An inconsistent system is reported through
/// `solvable = false`; the returned `(x, y)` are then the formula values.
pub fn sylvester_general(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
    z: Option<&DMatrix<f64>>,
    w: Option<&DMatrix<f64>>,
) -> Result<SylvesterSolution> {
    let (m, k) = a.shape();
    let (l, n) = b.shape();
    if c.shape() != (m, n) {
        return Err(Error::DimensionMismatch(format!(
            "C must be {m}x{n}, got {}x{}",
            c.nrows(),
            c.ncols()
        )));
    }
    let z = match z {
        Some(z) if z.shape() != (m, l) => {
            return Err(Error::DimensionMismatch(format!("Z must be {m}x{l}")));
        }
        Some(z) => z.clone(),
        None => DMatrix::zeros(m, l),
    };
    let w = match w {
        Some(w) if w.shape() != (k, n) => {
            return Err(Error::DimensionMismatch(format!("W must be {k}x{n}")));
        }
        Some(w) => w.clone(),
        None => DMatrix::zeros(k, n),
    };

    let a_pinv = pinv(a);
    let b_pinv = pinv(b);
    let left = DMatrix::<f64>::identity(m, m) - a * &a_pinv;
    let right = DMatrix::<f64>::identity(n, n) - &b_pinv * b;
    let condition_residual = (&left * c * &right).norm();
    let solvable = condition_residual <= SYLVESTER_TOLERANCE * (1.0 + c.norm());

    let x = &a_pinv * c + &a_pinv * &z * b + (DMatrix::<f64>::identity(k, k) - &a_pinv * a) * &w;
    let y = -(&left * c * &b_pinv) + &z - &left * &z * b * &b_pinv;

    Ok(SylvesterSolution {
        x,
        y,
        solvable,
        condition_residual,
    })
}
