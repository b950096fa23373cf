//! Reference implementations used to cross-check the library. They share
//! nothing with the code under test beyond the matrix type.

#![allow(dead_code)]

use nalgebra::DMatrix;

/// Brute-force solve of `A_i = Q_s·R_i + Q_s·P·R_s` for an upper-triangular
/// `R_i` (`m x n`) and a skew-symmetric `P` (`m x m`), given the standard
/// factors. The map from the unknowns (upper entries of `R_i`, then strictly
/// lower entries of `P`) to `vec(A_i)` is assembled column by column from
/// unit inputs and inverted in the minimum-norm least-squares sense.
///
/// Returns `(Q_i, R_i)` with `Q_i = Q_s·P`.
pub fn kronecker_full_dqr(
    q_s: &DMatrix<f64>,
    r_s: &DMatrix<f64>,
    a_i: &DMatrix<f64>,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let m = q_s.nrows();
    let n = r_s.ncols();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..m.min(c + 1)).map(move |r| (r, c))).collect();
    let lower: Vec<(usize, usize)> = (0..m).flat_map(|c| ((c + 1)..m).map(move |r| (r, c))).collect();
    let unknowns = upper.len() + lower.len();

    let mut map = DMatrix::<f64>::zeros(m * n, unknowns);
    for (col, &(r, c)) in upper.iter().enumerate() {
        let mut e = DMatrix::<f64>::zeros(m, n);
        e[(r, c)] = 1.0;
        let img = q_s * e;
        map.column_mut(col).copy_from_slice(img.as_slice());
    }
    for (off, &(r, c)) in lower.iter().enumerate() {
        let mut p = DMatrix::<f64>::zeros(m, m);
        p[(r, c)] = 1.0;
        p[(c, r)] = -1.0;
        let img = q_s * p * r_s;
        map.column_mut(upper.len() + off).copy_from_slice(img.as_slice());
    }

    // unknowns that never reach the output (the block of P acting on the
    // zero rows of R_s) take their minimum-norm value, zero, and are
    // removed so the remaining system is not underdetermined
    let active: Vec<usize> = (0..unknowns).filter(|&j| map.column(j).norm() > 1e-12).collect();
    let mut reduced = DMatrix::<f64>::zeros(m * n, active.len());
    for (dst, &src) in active.iter().enumerate() {
        reduced.set_column(dst, &map.column(src));
    }
    let rhs = DMatrix::from_column_slice(m * n, 1, a_i.as_slice());
    let svd = reduced.svd(true, true);
    let y = svd.solve(&rhs, 1e-12).expect("svd solve");
    let mut x = vec![0.0; unknowns];
    for (src, &dst) in active.iter().enumerate() {
        x[dst] = y[src];
    }

    let mut r_i = DMatrix::<f64>::zeros(m, n);
    for (idx, &(r, c)) in upper.iter().enumerate() {
        r_i[(r, c)] = x[idx];
    }
    let mut p = DMatrix::<f64>::zeros(m, m);
    for (off, &(r, c)) in lower.iter().enumerate() {
        let v = x[upper.len() + off];
        p[(r, c)] = v;
        p[(c, r)] = -v;
    }
    (q_s * p, r_i)
}

/// Explicit-projector form of the existence residual.
pub fn existence_residual_dense(q_s: &DMatrix<f64>, r_s: &DMatrix<f64>, a_i: &DMatrix<f64>) -> f64 {
    let m = q_s.nrows();
    let n = r_s.ncols();
    let left = DMatrix::<f64>::identity(m, m) - q_s * q_s.transpose();
    let rp = r_s.clone().pseudo_inverse(1e-13).expect("pinv");
    let right = DMatrix::<f64>::identity(n, n) - rp * r_s;
    (left * a_i * right).norm()
}
