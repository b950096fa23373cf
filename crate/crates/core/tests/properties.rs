use proptest::prelude::*;

use dualqr::dual_qr::{factor_residuals, normalize_signs};
use dualqr::io::{format_dmx, parse_dmx};
use dualqr::perturbation::empirical_record;
use dualqr::synth::{giid, giid_dual};
use dualqr::{dinverse, dmpgi, dmul, dqr, dtranspose, penrose_residuals, tdqr, tdqrcp, DualMatrix};

fn close(a: &DualMatrix, b: &DualMatrix, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(m in 1usize..6, k in 1usize..6, l in 1usize..6, n in 1usize..6, seed in any::<u32>()) {
        let s = seed as u64;
        let a = giid_dual(m, k, s);
        let b = giid_dual(k, l, s + 1);
        let c = giid_dual(l, n, s + 2);
        let left = dmul(&dmul(&a, &b).unwrap(), &c).unwrap();
        let right = dmul(&a, &dmul(&b, &c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-11));
    }

    #[test]
    fn transpose_reverses_products(m in 1usize..6, k in 1usize..6, n in 1usize..6, seed in any::<u32>()) {
        let a = giid_dual(m, k, seed as u64);
        let b = giid_dual(k, n, seed as u64 + 7);
        let lhs = dtranspose(&dmul(&a, &b).unwrap());
        let rhs = dmul(&dtranspose(&b), &dtranspose(&a)).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn inverse_is_two_sided(n in 1usize..7, seed in any::<u32>()) {
        let a = giid_dual(n, n, seed as u64);
        if let Ok(g) = dinverse(&a) {
            let scale = 1.0 + g.standard().norm().powi(2) * (1.0 + a.infinitesimal().norm());
            prop_assert!(close(&dmul(&a, &g).unwrap(), &DualMatrix::identity(n), 1e-10 * scale));
            prop_assert!(close(&dmul(&g, &a).unwrap(), &DualMatrix::identity(n), 1e-10 * scale));
        }
    }

    #[test]
    fn dqr_invariants(m in 1usize..9, n in 1usize..9, seed in any::<u32>()) {
        let a = giid_dual(m, n, seed as u64);
        let f = dqr(&a).unwrap();
        let res = factor_residuals(&a, &f).unwrap();
        prop_assert!(res.within(1e-10, m.max(n)), "{:?}", res);
    }

    #[test]
    fn thin_matches_full_prefix(n in 1usize..6, extra in 0usize..4, seed in any::<u32>()) {
        let m = n + extra;
        let a = giid_dual(m, n, seed as u64);
        let mut full = dqr(&a).unwrap();
        normalize_signs(&mut full);
        let thin = tdqr(&a).unwrap();
        // the leading n columns of Q and rows of R agree
        let q_lead = DualMatrix::new(
            full.q.standard().columns(0, n).clone_owned(),
            full.q.infinitesimal().columns(0, n).clone_owned(),
        ).unwrap();
        let r_lead = DualMatrix::new(
            full.r.standard().rows(0, n).clone_owned(),
            full.r.infinitesimal().rows(0, n).clone_owned(),
        ).unwrap();
        let scale = 1.0 + a.infinitesimal().norm();
        prop_assert!(close(&q_lead, &thin.q, 1e-8 * scale));
        prop_assert!(close(&r_lead, &thin.r, 1e-8 * scale));
    }

    #[test]
    fn pivoted_thin_has_decreasing_diagonal(m in 3usize..9, seed in any::<u32>()) {
        let a = giid_dual(m, 3, seed as u64);
        let f = tdqrcp(&a).unwrap();
        let r = f.r.standard();
        prop_assert!(r[(0, 0)] >= r[(1, 1)] && r[(1, 1)] >= r[(2, 2)] && r[(2, 2)] > 0.0);
    }

    #[test]
    fn inverse_meets_penrose(m in 1usize..7, n in 1usize..7, seed in any::<u32>()) {
        let a = giid_dual(m, n, seed as u64);
        let g = dmpgi(&a).unwrap();
        let scale = 1.0 + g.standard().norm().powi(2) * (1.0 + a.infinitesimal().norm());
        prop_assert!(penrose_residuals(&a, &g).unwrap().max() <= 1e-9 * scale);
    }

    #[test]
    fn sun_bound_small_perturbations(m in 2usize..12, n in 1usize..6, seed in any::<u32>()) {
        prop_assume!(n <= m);
        let a_s = giid(m, n, seed as u64);
        let dir = giid(m, n, seed as u64 + 3);
        let tau = 1e-4 * a_s.norm() / dir.norm();
        let rec = empirical_record(&a_s, &dir, tau).unwrap();
        prop_assert!(rec.norm_qi <= 1.05 * rec.bound_sun);
    }

    #[test]
    fn dmx_round_trip(m in 1usize..5, n in 1usize..5, seed in any::<u32>(), scale in -200i32..200) {
        let a = giid_dual(m, n, seed as u64);
        let s = 2f64.powi(scale);
        let a = DualMatrix::new(a.standard() * s, a.infinitesimal() / s).unwrap();
        prop_assert_eq!(parse_dmx(&format_dmx(&a)).unwrap(), a);
    }
}
