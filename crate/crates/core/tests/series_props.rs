use hllab_core::family::random_polynomial;
use hllab_core::series::{
    cauchy_coefficient, cauchy_power, coefficients_from_samples, dilate, dilate_real, evaluate_circle, frac_apply, hadamard, FracDirection,
    FracOrder,
};
use hllab_core::CoefficientSeries;
use num_complex::Complex64;
use proptest::prelude::*;

fn poly(max_len: usize) -> impl Strategy<Value = CoefficientSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len)
        .prop_map(|v| CoefficientSeries::new(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap())
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| {
        let x = a.get(i).copied().unwrap_or_default();
        let y = b.get(i).copied().unwrap_or_default();
        (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm()))
    })
}

/// Direct DFT, `f(e^{2πij/M}) = Σ a_n e^{2πijn/M}`.
fn naive_samples(f: &CoefficientSeries, r: f64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| {
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(n, a)| {
                    a * r.powi(n as i32) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * ((j * n) % m) as f64 / m as f64)
                })
                .sum()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hadamard_is_commutative_and_bilinear(f in poly(40), g in poly(40), h in poly(40), s in -3.0f64..3.0) {
        prop_assert_eq!(hadamard(&f, &g), hadamard(&g, &f));
        let c = Complex64::new(s, 0.5);
        let sum: Vec<Complex64> = (0..f.coeffs().len().max(h.coeffs().len()))
            .map(|i| f.coeffs().get(i).copied().unwrap_or_default() * c + h.coeffs().get(i).copied().unwrap_or_default())
            .collect();
        let lhs = hadamard(&CoefficientSeries::new(sum).unwrap(), &g);
        let fg = hadamard(&f, &g).scale(c);
        let hg = hadamard(&h, &g);
        let rhs: Vec<Complex64> = (0..lhs.coeffs().len())
            .map(|i| fg.coeffs().get(i).copied().unwrap_or_default() + hg.coeffs().get(i).copied().unwrap_or_default())
            .collect();
        prop_assert!(close(lhs.coeffs(), &rhs, 1e-14));
    }

    #[test]
    fn cauchy_kernel_is_the_identity(f in poly(64)) {
        let n = f.degree();
        let left = hadamard(&CoefficientSeries::cauchy_kernel(n), &f);
        let right = hadamard(&f, &CoefficientSeries::cauchy_kernel(n + 7));
        prop_assert_eq!(left.coeffs(), f.coeffs());
        prop_assert_eq!(right.coeffs(), f.coeffs());
    }

    #[test]
    fn fractional_round_trip(f in poly(200), beta in 0.05f64..6.0, power in any::<bool>()) {
        let order = if power { FracOrder::power(beta) } else { FracOrder::gamma(beta) };
        let up = frac_apply(&f, order, FracDirection::Derivative).unwrap();
        let back = frac_apply(&up, order, FracDirection::Integral).unwrap();
        prop_assert!(close(f.coeffs(), back.coeffs(), 1e-12));
        let down = frac_apply(&f, order, FracDirection::Integral).unwrap();
        let negated = frac_apply(&f, FracOrder { beta: -beta, flavor: order.flavor }, FracDirection::Derivative).unwrap();
        prop_assert_eq!(down, negated);
    }

    #[test]
    fn circle_samples_invert(f in poly(120), r in 0.0f64..=1.0, log_extra in 0u32..3) {
        let m = (f.degree() + 1).next_power_of_two() << log_extra;
        let samples = evaluate_circle(&f, r, m).unwrap();
        prop_assert!(close(samples.values(), &naive_samples(&f, r, m), 1e-12));
        let back = coefficients_from_samples(&samples);
        let expected: Vec<Complex64> = f.coeffs().iter().enumerate().map(|(n, a)| a * r.powi(n as i32)).collect();
        prop_assert!(close(&back, &expected, 1e-12));
    }

    #[test]
    fn dilation_composes(f in poly(100), a in 0.0f64..1.0, b in 0.0f64..1.0, t in 0.0f64..6.3) {
        let u = Complex64::from_polar(a, t);
        let w = Complex64::new(b, 0.0);
        let twice = dilate(&dilate(&f, u).unwrap(), w).unwrap();
        let once = dilate(&f, u * w).unwrap();
        prop_assert!(close(twice.coeffs(), once.coeffs(), 1e-13));
        prop_assert!(close(dilate_real(&f, b).unwrap().coeffs(), dilate(&f, w).unwrap().coeffs(), 1e-13));
    }
}

#[test]
fn cauchy_power_matches_the_binomial_recurrence() {
    for gamma in [0.1, 0.5, 1.0, 4.0 / 3.0, 2.0, 3.0, 5.5] {
        let c = cauchy_power(gamma, 4096).unwrap();
        let mut b = 1.0f64;
        for (n, a) in c.coeffs().iter().enumerate() {
            if n > 0 {
                b *= (n as f64 - 1.0 + gamma) / n as f64;
            }
            assert!((a.re - b).abs() <= 1e-10 * b, "gamma {gamma} n {n}: {} vs {b}", a.re);
        }
    }
}

#[test]
fn large_index_cauchy_coefficient_matches_log_space_oracle() {
    // ln b_n = Σ ln(1 + (γ - 1)/k), with Kahan summation
    let n = 1usize << 20;
    for gamma in [0.5, 2.0, 3.5] {
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for k in 1..=n {
            let term = ((gamma - 1.0) / k as f64).ln_1p();
            let y = term - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        let oracle = acc.exp();
        let got = cauchy_coefficient(gamma, n).unwrap();
        assert!((got - oracle).abs() <= 1e-9 * oracle, "gamma {gamma}: {got} vs {oracle}");
    }
}

#[test]
fn evaluation_agrees_with_horner() {
    let f = random_polynomial(300, 3);
    let m = 512;
    let samples = evaluate_circle(&f, 0.9, m).unwrap();
    for j in [0usize, 1, 17, 255, 511] {
        let z = Complex64::from_polar(0.9, 2.0 * std::f64::consts::PI * j as f64 / m as f64);
        assert!((samples.values()[j] - f.eval(z)).norm() < 1e-11);
    }
}
