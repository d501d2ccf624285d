use hllab_core::family::{random_polynomial, Generator, TestFamily};
use hllab_core::multiplier::{
    analytic_transform, apply_multiplier, duality_pairing, frozen_w_grid, opnorm_estimate, SpaceFamily, SpaceSpec,
};
use hllab_core::series::{abel_sum, cauchy_power, dilate_real, hadamard};
use hllab_core::{CoefficientSeries, Error};
use num_complex::Complex64;
use proptest::prelude::*;

fn poly(max_len: usize) -> impl Strategy<Value = CoefficientSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len)
        .prop_map(|v| CoefficientSeries::new(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multipliers_compose(lambda in poly(80), mu in poly(80), f in poly(80)) {
        let nested = apply_multiplier(&lambda, &apply_multiplier(&mu, &f));
        let combined = apply_multiplier(&hadamard(&lambda, &mu), &f);
        for (a, b) in nested.coeffs().iter().zip(combined.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-15 * (1.0 + b.norm()));
        }
        prop_assert_eq!(nested.degree(), combined.degree());
    }

    #[test]
    fn pairing_with_a_dilation_is_the_hadamard_value(f in poly(120), g in poly(120), r in 0.0f64..1.0) {
        let lhs = duality_pairing(&g, &dilate_real(&f, r).unwrap());
        let rhs = hadamard(&f, &g).eval(Complex64::new(r, 0.0));
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn pairing_is_the_abel_sum_of_the_product(f in poly(120), g in poly(120)) {
        let product = hadamard(&f, &g);
        let abel = abel_sum(&product, &[0.5, 0.9, 0.99], 1e-9).unwrap();
        prop_assert!((duality_pairing(&g, &f) - abel.reference).norm() <= 1e-12 * (1.0 + abel.reference.norm()));
    }
}

#[test]
fn larger_family_never_lowers_the_estimate() {
    let lambda = cauchy_power(0.5, 256).unwrap();
    let domain = SpaceSpec::new(SpaceFamily::HardyLorentz { p: 1.0, q: 1.0 }).unwrap();
    let target = SpaceSpec::new(SpaceFamily::LpSeq { s: 2.0, alpha: 0.0 }).unwrap();
    let small = TestFamily::new(vec![Generator::Constant, Generator::Monomial], vec![16, 64], 3);
    let mut bigger = small.clone();
    bigger.generators.push(Generator::Random { draws: 2 });
    bigger.generators.push(Generator::Cauchy(1.0));
    let mut biggest = bigger.clone();
    biggest.degrees.push(256);
    let estimates: Vec<f64> = [small, bigger, biggest]
        .iter()
        .map(|fam| opnorm_estimate(&lambda, &domain, &target, fam).unwrap().sup_ratio)
        .collect();
    assert!(estimates.windows(2).all(|w| w[0] <= w[1]), "{estimates:?}");
}

#[test]
fn estimate_reports_its_witness() {
    let lambda = CoefficientSeries::from_real(&[0.0, 0.0, 0.0, 5.0]).unwrap();
    let spec = SpaceSpec::new(SpaceFamily::LpSeq { s: 2.0, alpha: 0.0 }).unwrap();
    let fam = TestFamily::new(vec![Generator::Constant, Generator::Monomial], vec![3, 5], 1);
    let est = opnorm_estimate(&lambda, &spec, &spec, &fam).unwrap();
    assert_eq!(est.sup_ratio, 5.0);
    assert_eq!((est.argmax_tag.as_str(), est.argmax_degree), ("monomial", 3));
    assert!(est.skipped.is_empty());
}

#[test]
fn transform_matches_direct_sums_and_rejects_the_boundary() {
    let lambda = random_polynomial(40, 8);
    let grid = frozen_w_grid();
    assert_eq!(grid.len(), 48);
    let values = analytic_transform(&lambda, &grid).unwrap();
    for (w, v) in grid.iter().zip(&values) {
        let direct: Complex64 = lambda.coeffs().iter().enumerate().map(|(n, a)| a * w.powu(n as u32)).sum();
        assert!((v - direct).norm() < 1e-12);
    }
    assert!(matches!(
        analytic_transform(&lambda, &[Complex64::new(0.6, 0.8)]),
        Err(Error::PointOutsideDisk { .. })
    ));
}
