mod common;

use common::*;
use num_complex::Complex64;
use otp_opuc::bridge::{bridge_residual, bridge_residual_even, coefficient_relations, det_closed_form, ConnectionMatrix};
use otp_opuc::otp::{gram_schmidt, gram_schmidt_cholesky, SystemTag};
use otp_opuc::szego::SzegoFunction;
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};
use otp_opuc::zeros::zero_diagnostics;
use proptest::prelude::*;

/// Positive trigonometric weights `1 + sum c_k cos + s_k sin` with
/// coefficient mass below 0.9.
fn cosine_weight() -> impl Strategy<Value = WeightSpec> {
    (prop::collection::vec(-0.3f64..0.3, 1..=3), prop::collection::vec(-0.3f64..0.3, 0..=2)).prop_map(|(cos, sin)| {
        WeightSpec::new(WeightKind::CosinePoly { constant: 1.0, cos, sin }).unwrap()
    })
}

fn point(r_lo: f64, r_hi: f64) -> impl Strategy<Value = Complex64> {
    (r_lo..r_hi, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moments_are_hermitian(w in cosine_weight()) {
        let m = trig_moments(&w, 6, 1e-15).unwrap();
        prop_assert!((m.get_or_zero(0) - c(1.0, 0.0)).norm() < 1e-14);
        for k in 1..=6 {
            prop_assert!((m.get_or_zero(-k) - m.get_or_zero(k).conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn exp_cos_moments_are_bessel_ratios(p in 0.1f64..2.0) {
        let w = WeightSpec::new(WeightKind::ExpTrig { p, q: 0.0 }).unwrap();
        let m = trig_moments(&w, 5, 1e-15).unwrap();
        for k in 0..=5u32 {
            let want = bessel_i(k, p) / bessel_i(0, p);
            prop_assert!((m.get_or_zero(k as i64) - c(want, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn systems_are_orthonormal(w in cosine_weight()) {
        let s = systems(&w, 6);
        prop_assert!(s.otp.gram_residual(&s.moments).unwrap() < 1e-10);
        prop_assert!(s.otp_second.gram_residual(&s.moments).unwrap() < 1e-10);
        prop_assert!(s.opuc.gram_residual(&s.moments).unwrap() < 1e-10);
        prop_assert!(quadrature_gram_real(&w, s.otp.polys(), 256) < 1e-10);
    }

    #[test]
    fn verblunsky_inside_disk(w in cosine_weight()) {
        let s = systems(&w, 6);
        prop_assert!(s.opuc.alphas().iter().all(|a| a.norm() < 1.0));
        prop_assert!(s.opuc.verblunsky_consistency() < 1e-12);
    }

    #[test]
    fn cholesky_route_matches_gram_schmidt(w in cosine_weight()) {
        let m = trig_moments(&w, 14, 1e-15).unwrap();
        for tag in [SystemTag::First, SystemTag::Second] {
            let gs = gram_schmidt(&m, tag, 6).unwrap();
            let ch = gram_schmidt_cholesky(&m, tag, 6).unwrap();
            for k in 1..=6 {
                let (a, b, beta) = gs.level_scalars(k).unwrap();
                let (a2, b2, beta2) = ch.level_scalars(k).unwrap();
                prop_assert!((a - a2).abs() < 1e-11 && (b - b2).abs() < 1e-11 && (beta - beta2).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn bridge_holds_pointwise(w in cosine_weight(), z in point(0.5, 1.5), n in 1usize..=6) {
        let s = systems(&w, 6);
        let scale = 1.0 + z.norm();
        prop_assert!(bridge_residual(&s.otp, &s.opuc, n, z).unwrap() < 1e-10 * scale.powi(2 * n as i32 - 1));
        prop_assert!(bridge_residual_even(&s.otp, &s.opuc, n, z).unwrap() < 1e-10 * scale.powi(2 * n as i32));
    }

    #[test]
    fn connection_determinant(w in cosine_weight(), n in 1usize..=6) {
        let s = systems(&w, 6);
        let (a, b, beta) = s.otp.level_scalars(n).unwrap();
        let det = ConnectionMatrix::from_otp(&s.otp, n).unwrap().det();
        prop_assert!((det - det_closed_form(a, b, beta)).norm() < 1e-11 * det.norm().max(1.0));
        prop_assert!(coefficient_relations(&s.otp, &s.opuc, n).unwrap().det < 1e-11);
    }

    #[test]
    fn zeros_simple_on_circle_and_separated(w in cosine_weight(), n in 1usize..=6) {
        let s = systems(&w, 6);
        let d = zero_diagnostics(&s.otp, n).unwrap();
        prop_assert_eq!(d.sigma.angles.len(), 2 * n);
        prop_assert_eq!(d.pi.angles.len(), 2 * n);
        prop_assert!(d.sigma.max_modulus_defect() < 1e-8 && d.pi.max_modulus_defect() < 1e-8);
        prop_assert!(d.separation > 1e-6);
    }

    #[test]
    fn szego_factorization(w in cosine_weight()) {
        let sf = SzegoFunction::new(&w).unwrap();
        prop_assert!(sf.factorization_residual(&w, 128) < 1e-11);
    }
}
