mod support;

use dualqr::real::qr_real;
use dualqr::synth::giid_dual;
use dualqr::{dqr, existence_residual};
use support::{existence_residual_dense, kronecker_full_dqr};

#[test]
fn oracle_on_identity_standard_part() {
    // Q_s = R_s = I reduces the system to A_i = R_i + P
    let q = nalgebra::DMatrix::<f64>::identity(3, 3);
    let a_i = nalgebra::DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
    let (qi, ri) = kronecker_full_dqr(&q, &q, &a_i);
    let p = nalgebra::DMatrix::from_row_slice(3, 3, &[0.0, -4.0, -7.0, 4.0, 0.0, -8.0, 7.0, 8.0, 0.0]);
    assert!((&qi - &p).amax() < 1e-12);
    assert!((ri + p - a_i).amax() < 1e-12);
}

#[test]
fn dqr_matches_oracle_small_shapes() {
    for m in 1..=5 {
        for n in 1..=4 {
            let a = giid_dual(m, n, (100 * m + n) as u64);
            let f = dqr(&a).unwrap();
            let (qi, ri) = kronecker_full_dqr(f.q.standard(), f.r.standard(), a.infinitesimal());
            assert!((f.q.infinitesimal() - qi).amax() <= 1e-8, "{m}x{n}");
            assert!((f.r.infinitesimal() - ri).amax() <= 1e-8, "{m}x{n}");
        }
    }
}

#[test]
fn existence_residual_matches_dense_form() {
    let a = giid_dual(9, 6, 3);
    let std = dualqr::real::rqrcp(a.standard(), &dualqr::SketchConfig::new(3, 2)).unwrap();
    let ai = std.perm.apply_columns(a.infinitesimal());
    let fast = existence_residual(&std.q, &std.r, &ai).unwrap();
    let dense = existence_residual_dense(&std.q, &std.r, &ai);
    assert!((fast - dense).abs() <= 1e-10 * dense.max(1.0));
    let full = qr_real(a.standard(), false, true);
    assert!(existence_residual(&full.q, &full.r, a.infinitesimal()).unwrap() <= 1e-12);
}
