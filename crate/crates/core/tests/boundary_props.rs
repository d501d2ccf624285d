use hllab_core::boundary::{
    bmoa_default, hardy_lorentz_norm, lorentz_quasinorm, lp_mean, modulus_of_continuity, modulus_profile, rearrangement, CircleSamples,
    DifferenceOrder, RearrangementProfile,
};
use hllab_core::series::evaluate_circle;
use hllab_core::CoefficientSeries;
use num_complex::Complex64;
use proptest::prelude::*;

fn moduli(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, 1..max_len)
}

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.5), Just(1.0), Just(2.0), 0.2f64..6.0]
}

fn samples(values: &[f64]) -> CircleSamples {
    CircleSamples::new(1.0, values.iter().map(|&x| Complex64::new(x, -0.5 * x)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lorentz_ignores_sample_order(mut v in moduli(300), p in exponent(), q in exponent(), rot in 0usize..300) {
        let a = RearrangementProfile::from_moduli(v.clone()).unwrap();
        let k = rot % v.len();
        v.rotate_left(k);
        v.reverse();
        let b = RearrangementProfile::from_moduli(v).unwrap();
        prop_assert_eq!(lorentz_quasinorm(&a, p, q).unwrap().to_bits(), lorentz_quasinorm(&b, p, q).unwrap().to_bits());
    }

    #[test]
    fn weak_type_bound(v in moduli(300), p in exponent(), q in exponent()) {
        let prof = RearrangementProfile::from_moduli(v).unwrap();
        let weak = lorentz_quasinorm(&prof, p, f64::INFINITY).unwrap();
        let strong = lorentz_quasinorm(&prof, p, q).unwrap();
        prop_assert!(weak <= (q / p).powf(1.0 / q) * strong * (1.0 + 1e-12));
    }

    #[test]
    fn diagonal_lorentz_is_the_lp_mean(v in moduli(256), p in exponent()) {
        let s = samples(&v);
        let lorentz = lorentz_quasinorm(&rearrangement(&s), p, p).unwrap();
        let mean = lp_mean(&s, p).unwrap();
        prop_assert!((lorentz - mean).abs() <= 1e-10 * mean.max(1e-300));
    }

    #[test]
    fn lorentz_is_homogeneous(v in moduli(200), p in exponent(), q in exponent(), c in 1e-3f64..1e3) {
        let a = lorentz_quasinorm(&RearrangementProfile::from_moduli(v.clone()).unwrap(), p, q).unwrap();
        let b = lorentz_quasinorm(&RearrangementProfile::from_moduli(v.iter().map(|x| c * x).collect()).unwrap(), p, q).unwrap();
        prop_assert!((b - c * a).abs() <= 1e-13 * c * a.max(1e-300));
    }

    #[test]
    fn moduli_are_nondecreasing(log_m in 3u32..9, seed in 0u64..1000, second in any::<bool>(), s in 1.0f64..4.0) {
        let m = 1usize << log_m;
        let f = hllab_core::family::random_polynomial(m / 2 - 1, seed);
        let order = if second { DifferenceOrder::Second } else { DifferenceOrder::First };
        let circle = evaluate_circle(&f, 1.0, m).unwrap();
        let profile = modulus_profile(&circle, order, s).unwrap();
        prop_assert!(profile.windows(2).all(|w| w[0].1 <= w[1].1 && w[0].0 < w[1].0));
        let mut last = 0.0;
        for &(t, _) in &profile {
            let w = modulus_of_continuity(&circle, order, t, s).unwrap();
            prop_assert!(w >= last);
            last = w;
        }
    }

    #[test]
    fn bmoa_is_rotation_invariant(log_m in 2u32..8, seed in 0u64..1000, k in 0usize..256) {
        let m = 1usize << log_m;
        let f = hllab_core::family::random_polynomial(m - 1, seed);
        let circle = evaluate_circle(&f, 1.0, m).unwrap();
        prop_assert_eq!(bmoa_default(&circle).to_bits(), bmoa_default(&circle.rotated(k)).to_bits());
    }
}

#[test]
fn two_level_step_matches_closed_form() {
    // f* = 3 on [0, 1/4), 1 on [1/4, 1)
    let mut v = vec![1.0; 1024];
    v[..256].iter_mut().for_each(|x| *x = 3.0);
    let prof = RearrangementProfile::from_moduli(v).unwrap();
    for (p, q) in [(0.5, 1.0), (1.0, 2.0), (2.0, 0.5), (3.0, 3.0)] {
        let e = q / p;
        let integral = 3f64.powf(q) * 0.25f64.powf(e) + (1.0 - 0.25f64.powf(e));
        let expected = (p / q * integral).powf(1.0 / q);
        let got = lorentz_quasinorm(&prof, p, q).unwrap();
        assert!((got - expected).abs() < 1e-13 * expected, "({p},{q}): {got} vs {expected}");
        let weak = lorentz_quasinorm(&prof, p, f64::INFINITY).unwrap();
        assert!((weak - (3.0 * 0.25f64.powf(1.0 / p)).max(1.0)).abs() < 1e-14);
    }
}

#[test]
fn monomials_have_unit_hardy_lorentz_norm() {
    for n in [0usize, 1, 5, 100] {
        for (p, q) in [(0.5, 0.5), (0.5, f64::INFINITY), (2.0, 1.0)] {
            let norm = hardy_lorentz_norm(&CoefficientSeries::monomial(n), p, q, 256).unwrap();
            let expected = if q.is_infinite() { 1.0 } else { (p / q).powf(1.0 / q) };
            assert!((norm - expected).abs() < 1e-12, "z^{n} ({p},{q}): {norm}");
        }
    }
}
