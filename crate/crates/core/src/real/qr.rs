//! Householder QR, optionally with column pivoting.
//!
//! The factorization is computed in place on a column-major copy of `A`
//! (LAPACK `geqp3`/`geqrf` layout: `R` on and above the diagonal, the
//! reflector tails below it), then `Q` is accumulated backwards.

use nalgebra::DMatrix;

use super::{numerical_rank, Permutation};

/// Real QR factors `A·perm = q·r`.
#[derive(Debug, Clone, PartialEq)]
pub struct QrFactorsReal {
    pub q: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub perm: Permutation,
    pub rank: usize,
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0f64; 4];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (x, y) in (&mut ca).zip(&mut cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut tail = 0.0;
    for (x, y) in ca.remainder().iter().zip(cb.remainder()) {
        tail += x * y;
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

#[inline]
fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
fn norm2(x: &[f64]) -> f64 {
    // scaled accumulation is unnecessary for the magnitudes seen here
    dot(x, x).sqrt()
}

/// Turns `x` into a Householder vector in place. On return `x[0]` holds
/// `beta` and `x[1..]` the reflector tail (implicit leading 1); the returned
/// `tau` satisfies `(I − tau·v·vᵀ)·x_old = beta·e₁`.
fn make_reflector(x: &mut [f64]) -> f64 {
    let alpha = x[0];
    let xnorm = norm2(&x[1..]);
    if xnorm == 0.0 {
        return 0.0;
    }
    let beta = -alpha.hypot(xnorm).copysign(alpha);
    let tau = (beta - alpha) / beta;
    let scale = 1.0 / (alpha - beta);
    for v in &mut x[1..] {
        *v *= scale;
    }
    x[0] = beta;
    tau
}

/// Applies `I − tau·v·vᵀ` (with `v = [1; tail]`) to `col`.
#[inline]
fn apply_reflector(tau: f64, tail: &[f64], col: &mut [f64]) {
    let (head, rest) = col.split_first_mut().expect("non-empty column");
    let w = tau * (*head + dot(tail, rest));
    *head -= w;
    axpy(-w, tail, rest);
}

struct Compact {
    qr: DMatrix<f64>,
    tau: Vec<f64>,
    perm: Permutation,
}

fn factor(a: &DMatrix<f64>, pivot: bool) -> Compact {
    let (m, n) = a.shape();
    let kmax = m.min(n);
    let mut qr = a.clone();
    let mut tau = vec![0.0; kmax];
    let mut perm = Permutation::identity(n);
    let data = qr.as_mut_slice();

    let mut vn1: Vec<f64> = if pivot {
        (0..n).map(|c| norm2(&data[c * m..(c + 1) * m])).collect()
    } else {
        Vec::new()
    };
    let mut vn2 = vn1.clone();
    let tol3z = f64::EPSILON.sqrt();

    for j in 0..kmax {
        if pivot {
            let mut p = j;
            for c in (j + 1)..n {
                if vn1[c] > vn1[p] {
                    p = c;
                }
            }
            if p != j {
                for i in 0..m {
                    data.swap(j * m + i, p * m + i);
                }
                perm.swap(j, p);
                vn1.swap(j, p);
                vn2.swap(j, p);
            }
        }

        tau[j] = make_reflector(&mut data[j * m + j..(j + 1) * m]);

        let (left, right) = data.split_at_mut((j + 1) * m);
        let tail = &left[j * m + j + 1..(j + 1) * m];
        if tau[j] != 0.0 {
            for col in right.chunks_exact_mut(m) {
                apply_reflector(tau[j], tail, &mut col[j..]);
            }
        }

        if pivot {
            // LAPACK-style downdating of the partial column norms
            for (c, col) in right.chunks_exact(m).enumerate() {
                let c = c + j + 1;
                if vn1[c] == 0.0 {
                    continue;
                }
                let t = col[j].abs() / vn1[c];
                let t = (1.0 - t * t).max(0.0);
                let ratio = vn1[c] / vn2[c];
                if t * ratio * ratio <= tol3z {
                    vn1[c] = norm2(&col[j + 1..]);
                    vn2[c] = vn1[c];
                } else {
                    vn1[c] *= t.sqrt();
                }
            }
        }
    }

    Compact { qr, tau, perm }
}

fn accumulate_q(c: &Compact, qcols: usize) -> DMatrix<f64> {
    let m = c.qr.nrows();
    let kmax = c.tau.len();
    let mut q = DMatrix::zeros(m, qcols);
    for i in 0..m.min(qcols) {
        q[(i, i)] = 1.0;
    }
    let src = c.qr.as_slice();
    let dst = q.as_mut_slice();
    for j in (0..kmax).rev() {
        if c.tau[j] == 0.0 {
            continue;
        }
        let tail = &src[j * m + j + 1..(j + 1) * m];
        for col in dst.chunks_exact_mut(m).skip(j) {
            apply_reflector(c.tau[j], tail, &mut col[j..]);
        }
    }
    q
}

/// Householder QR of `a`.
///
/// With `pivot`, columns are chosen by largest remaining norm, so the
/// diagonal of `r` is nonincreasing in magnitude. With `thin`, `q` is
/// `m x min(m, n)`, `r` is `min(m, n) x n`, and the diagonal of `r` is made
/// nonnegative by flipping signs of matching `q` columns and `r` rows.
/// Otherwise `q` is the full `m x m` orthogonal factor and `r` is `m x n`,
/// with signs as the reflectors leave them.
pub fn qr_real(a: &DMatrix<f64>, pivot: bool, thin: bool) -> QrFactorsReal {
    let (m, n) = a.shape();
    let kmax = m.min(n);
    let compact = factor(a, pivot);
    let rrows = if thin { kmax } else { m };
    let mut q = accumulate_q(&compact, rrows);
    let mut r = DMatrix::zeros(rrows, n);
    for c in 0..n {
        for i in 0..(c + 1).min(rrows) {
            r[(i, c)] = compact.qr[(i, c)];
        }
    }
    if thin {
        for j in 0..kmax {
            if r[(j, j)] < 0.0 {
                r.row_mut(j).neg_mut();
                q.column_mut(j).neg_mut();
            }
        }
    }
    let rank = numerical_rank(&r, m, n);
    QrFactorsReal {
        q,
        r,
        perm: compact.perm,
        rank,
    }
}
