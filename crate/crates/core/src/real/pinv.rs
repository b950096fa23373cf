use nalgebra::DMatrix;

/// Moore–Penrose pseudoinverse from the SVD, discarding singular values at
/// or below `max(m, n)·eps·σ₁`.
pub fn pinv(a: &DMatrix<f64>) -> DMatrix<f64> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return DMatrix::zeros(n, m);
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let s = &svd.singular_values;
    let smax = s.iter().cloned().fold(0.0, f64::max);
    let cutoff = m.max(n) as f64 * f64::EPSILON * smax;
    let mut g = DMatrix::zeros(n, m);
    for (k, &sk) in s.iter().enumerate() {
        if sk > cutoff {
            // g += v_k (1/s_k) u_kᵀ
            g.ger(1.0 / sk, &vt.row(k).transpose(), &u.column(k), 1.0);
        }
    }
    g
}

pub fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = a.clone().singular_values().iter().cloned().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// `Rᵀ(R·Rᵀ)⁻¹` for a matrix with full row rank, via Cholesky of the Gram
/// matrix. Returns `None` when the Gram matrix is not positive definite.
pub fn right_pinv_full_row_rank(r: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let gram = r * r.transpose();
    let chol = gram.cholesky()?;
    // (R Rᵀ)⁻¹ R, transposed
    Some(chol.solve(r).transpose())
}
