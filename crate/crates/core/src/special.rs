//! Log-gamma and stable gamma ratios.
//!
//! Ratios `Γ(x + a) / Γ(x)` are formed from a Stirling expansion of the
//! *difference* of log-gammas, so no large intermediate `ln Γ` value ever
//! appears. Small arguments are first shifted upward with the recurrence
//! `Γ(z + 1) = z Γ(z)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Arguments at or above this value use the asymptotic series directly.
const STIRLING_MIN: f64 = 20.0;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Tail of the Stirling series, `ln Γ(z) - [(z - 1/2) ln z - z + ln(2π)/2]`.
fn stirling_tail(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Bernoulli terms B_{2k} / (2k (2k-1)), k = 1..6
    inv * (1.0 / 12.0
        + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360_360.0))))))
}

/// Natural log of `Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "ln_gamma needs a positive finite argument, got {x}"
        )));
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < STIRLING_MIN {
        shift += z.ln();
        z += 1.0;
    }
    Ok((z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + stirling_tail(z) - shift)
}

/// `ln Γ(x + a) - ln Γ(x)` for `x > 0` and `x + a > 0`.
pub fn ln_gamma_ratio(x: f64, a: f64) -> Result<f64> {
    if !(x > 0.0) || !(x + a > 0.0) || !x.is_finite() || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "ln_gamma_ratio needs x > 0 and x + a > 0, got x = {x}, a = {a}"
        )));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    // Shift both arguments so that min(x, x + a) >= STIRLING_MIN.
    let mut lo = x.min(x + a);
    let mut y = x;
    let mut correction = 0.0;
    while lo < STIRLING_MIN {
        // ln Γ(y + a) - ln Γ(y) = ln Γ(y + 1 + a) - ln Γ(y + 1) - ln((y + a) / y)
        correction += (a / y).ln_1p();
        y += 1.0;
        lo += 1.0;
    }
    let main = (y - 0.5) * (a / y).ln_1p() + a * (y + a).ln() - a;
    Ok(main + stirling_tail(y + a) - stirling_tail(y) - correction)
}

/// `Γ(x + a) / Γ(x)` for `x > 0`.
///
/// A nonpositive integer `x + a` is a pole of the numerator and is rejected.
/// Negative non-integer numerators go through the reflection formula.
pub fn gamma_ratio(x: f64, a: f64) -> Result<f64> {
    let z = x + a;
    if z > 0.0 {
        return Ok(ln_gamma_ratio(x, a)?.exp());
    }
    if z == z.floor() {
        return Err(Error::GammaPole { arg: z });
    }
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma_ratio needs x > 0, got {x}")));
    }
    // Γ(z) = π / (sin(πz) Γ(1 - z))
    let s = (PI * z).sin();
    let ln_abs = PI.ln() - s.abs().ln() - ln_gamma(1.0 - z)? - ln_gamma(x)?;
    Ok(s.signum() * ln_abs.exp())
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in 1..25u32 {
            let expected = factorial(n - 1).ln();
            let got = ln_gamma(f64::from(n)).unwrap();
            assert!((got - expected).abs() <= 1e-13 * expected.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn half_integer_value() {
        let got = gamma(0.5).unwrap();
        assert!((got - PI.sqrt()).abs() < 1e-14);
        let got = gamma(1.5).unwrap();
        assert!((got - 0.5 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn ratio_agrees_with_products() {
        // Γ(n + 1 + 2) / Γ(n + 1) = (n + 1)(n + 2)
        for n in [0.0, 1.0, 7.0, 50.0, 1e4, 1e6] {
            let got = gamma_ratio(n + 1.0, 2.0).unwrap();
            let expected = (n + 1.0) * (n + 2.0);
            assert!(((got - expected) / expected).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn ratio_with_negative_shift() {
        // Γ(x - 1) / Γ(x) = 1 / (x - 1)
        let got = gamma_ratio(5.5, -1.0).unwrap();
        assert!((got - 1.0 / 4.5).abs() < 1e-14);
    }

    #[test]
    fn reflection_branch_sign() {
        // Γ(-1/2) = -2 sqrt(pi); Γ(1) = 1
        let got = gamma_ratio(1.0, -1.5).unwrap();
        assert!((got + 2.0 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        assert_eq!(gamma_ratio(1.0, -1.0), Err(Error::GammaPole { arg: 0.0 }));
        assert!(matches!(gamma_ratio(2.0, -4.0), Err(Error::GammaPole { .. })));
    }
}
