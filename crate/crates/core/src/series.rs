//! Coefficient-level representation of polynomials on the disk and the
//! transforms that act diagonally on Taylor coefficients.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::boundary::CircleSamples;
use crate::error::{Error, Result};
use crate::special;

/// Finite Taylor coefficient list `(a_0, ..., a_N)` standing for
/// `f(z) = Σ a_n z^n`. Trailing zeros are allowed and count toward the degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    coeffs: Vec<Complex64>,
}

impl CoefficientSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("coefficient list must be nonempty".into()));
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            coeffs: vec![Complex64::new(c, 0.0)],
        }
    }

    /// `u_n(z) = z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[n] = Complex64::new(1.0, 0.0);
        s
    }

    /// Degree-`n` truncation of the Cauchy kernel `1 / (1 - z)` (all ones).
    pub fn cauchy_kernel(n: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0); n + 1],
        }
    }

    /// `Σ_{k : 2^k <= n} z^{2^k}`.
    pub fn lacunary(n: usize) -> Self {
        let mut s = Self::zero(n.max(1));
        let mut k = 1usize;
        while k <= n.max(1) {
            s.coeffs[k] = Complex64::new(1.0, 0.0);
            k *= 2;
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Coefficientwise map `a_n ↦ m(n) a_n`.
    pub fn map_diagonal<F: Fn(usize) -> f64>(&self, m: F) -> Self {
        Self {
            coeffs: self.coeffs.iter().enumerate().map(|(n, a)| a * m(n)).collect(),
        }
    }

    /// Horner evaluation at an arbitrary complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
    }
}

/// Hadamard product: coordinatewise product truncated to the shorter degree.
pub fn hadamard(f: &CoefficientSeries, g: &CoefficientSeries) -> CoefficientSeries {
    CoefficientSeries {
        coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a * b).collect(),
    }
}

/// Dilation `f_w(z) = f(wz)` for `|w| <= 1`.
pub fn dilate(f: &CoefficientSeries, w: Complex64) -> Result<CoefficientSeries> {
    let modulus = w.norm();
    if !(modulus <= 1.0) {
        return Err(Error::DilationOutsideDisk { modulus });
    }
    let mut power = Complex64::new(1.0, 0.0);
    let coeffs = f
        .coeffs
        .iter()
        .map(|a| {
            let c = a * power;
            power *= w;
            c
        })
        .collect();
    Ok(CoefficientSeries { coeffs })
}

/// Real-radius dilation; uses `r.powi(n)` so that nested dilations by real
/// factors agree with a single dilation to round-off.
pub fn dilate_real(f: &CoefficientSeries, r: f64) -> Result<CoefficientSeries> {
    if !(r.abs() <= 1.0) {
        return Err(Error::DilationOutsideDisk { modulus: r.abs() });
    }
    Ok(f.map_diagonal(|n| r.powi(n as i32)))
}

/// Partial sum `S_N f`, zero-extended when `N > deg f`.
pub fn partial_sum(f: &CoefficientSeries, n: usize) -> CoefficientSeries {
    let mut coeffs: Vec<Complex64> = f.coeffs.iter().take(n + 1).copied().collect();
    coeffs.resize(n + 1, Complex64::new(0.0, 0.0));
    CoefficientSeries { coeffs }
}

/// Taylor coefficient `Γ(n + γ) / (Γ(γ) n!)` of `(1 - z)^{-γ}`.
pub fn cauchy_coefficient(gamma: f64, n: usize) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("cauchy exponent must be positive, got {gamma}")));
    }
    let ln = special::ln_gamma_ratio(n as f64 + 1.0, gamma - 1.0)? - special::ln_gamma(gamma)?;
    Ok(ln.exp())
}

/// Degree-`n` truncation of `(1 - z)^{-γ}`.
pub fn cauchy_power(gamma: f64, n: usize) -> Result<CoefficientSeries> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("cauchy exponent must be positive, got {gamma}")));
    }
    let ln_norm = special::ln_gamma(gamma)?;
    let coeffs = (0..=n)
        .map(|k| {
            let ln = special::ln_gamma_ratio(k as f64 + 1.0, gamma - 1.0)? - ln_norm;
            Ok(Complex64::new(ln.exp(), 0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientSeries { coeffs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FracFlavor {
    /// `D^β`, `D_β`: multiplication by `Γ(n + β + 1) / n!` or its reciprocal.
    Gamma,
    /// `J^β`, `J_β`: multiplication by `(n + 1)^{±β}`.
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FracDirection {
    Derivative,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    pub beta: f64,
    pub flavor: FracFlavor,
}

impl FracOrder {
    pub fn new(beta: f64, flavor: FracFlavor) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("fractional order must be finite, got {beta}")));
        }
        Ok(Self { beta, flavor })
    }

    pub fn gamma(beta: f64) -> Self {
        Self {
            beta,
            flavor: FracFlavor::Gamma,
        }
    }

    pub fn power(beta: f64) -> Self {
        Self {
            beta,
            flavor: FracFlavor::Power,
        }
    }
}

/// Multiplier sequence of the fractional operator, `m(n)` for `n = 0..=degree`.
///
/// A negative order flips the direction, so `D^{-β} = D_β` and `D_{-β} = D^β`.
pub fn frac_multipliers(order: FracOrder, direction: FracDirection, degree: usize) -> Result<Vec<f64>> {
    if !order.beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "fractional order must be finite, got {}",
            order.beta
        )));
    }
    if order.beta == 0.0 {
        return Ok(vec![1.0; degree + 1]);
    }
    let (beta, direction) = if order.beta < 0.0 {
        let flipped = match direction {
            FracDirection::Derivative => FracDirection::Integral,
            FracDirection::Integral => FracDirection::Derivative,
        };
        (-order.beta, flipped)
    } else {
        (order.beta, direction)
    };
    (0..=degree)
        .map(|n| {
            let m = match order.flavor {
                FracFlavor::Gamma => special::gamma_ratio(n as f64 + 1.0, beta)?,
                FracFlavor::Power => (n as f64 + 1.0).powf(beta),
            };
            Ok(match direction {
                FracDirection::Derivative => m,
                FracDirection::Integral => 1.0 / m,
            })
        })
        .collect()
}

/// Fractional derivative or integral of `f`.
pub fn frac_apply(f: &CoefficientSeries, order: FracOrder, direction: FracDirection) -> Result<CoefficientSeries> {
    let m = frac_multipliers(order, direction, f.degree())?;
    Ok(f.map_diagonal(|n| m[n]))
}

/// `f^{[β]}` in the gamma flavor.
pub fn frac_derivative(f: &CoefficientSeries, beta: f64) -> Result<CoefficientSeries> {
    frac_apply(f, FracOrder::gamma(beta), FracDirection::Derivative)
}

/// `f_{[β]}` in the gamma flavor.
pub fn frac_integral(f: &CoefficientSeries, beta: f64) -> Result<CoefficientSeries> {
    frac_apply(f, FracOrder::gamma(beta), FracDirection::Integral)
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn inverse_plan(m: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(m))
}

fn forward_plan(m: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(m))
}

/// Samples `f(r e^{2πij/M})`, `j = 0..M`, by an unnormalised inverse DFT of
/// the zero-padded, radius-scaled coefficients.
pub fn evaluate_circle(f: &CoefficientSeries, r: f64, m: usize) -> Result<CircleSamples> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("radius must lie in [0, 1], got {r}")));
    }
    if !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    if m < f.degree() + 1 {
        return Err(Error::Aliasing { m, degree: f.degree() });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    let mut power = 1.0;
    for (slot, a) in buf.iter_mut().zip(&f.coeffs) {
        *slot = a * power;
        power *= r;
    }
    inverse_plan(m).process(&mut buf);
    CircleSamples::new(r, buf)
}

/// Coefficients recovered from equispaced samples (forward DFT divided by M).
pub fn coefficients_from_samples(samples: &CircleSamples) -> Vec<Complex64> {
    let m = samples.len();
    let mut buf = samples.values().to_vec();
    forward_plan(m).process(&mut buf);
    let inv = 1.0 / m as f64;
    buf.iter().map(|c| c * inv).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbelEstimate {
    pub value: Complex64,
    pub converged: bool,
    /// `A(r)` at every schedule radius.
    pub trace: Vec<Complex64>,
    /// Plain coefficient sum, the exact limit for finite sequences.
    pub reference: Complex64,
}

/// Abel means `A(r) = Σ λ_n r^n` along an increasing schedule of radii.
pub fn abel_sum(lambda: &CoefficientSeries, schedule: &[f64], tol: f64) -> Result<AbelEstimate> {
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("abel schedule must be nonempty".into()));
    }
    if schedule.iter().any(|&r| !(r > 0.0 && r < 1.0)) || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("abel schedule must be increasing inside (0, 1)".into()));
    }
    let trace: Vec<Complex64> = schedule.iter().map(|&r| lambda.eval(Complex64::new(r, 0.0))).collect();
    let converged = trace.len() >= 2 && (trace[trace.len() - 1] - trace[trace.len() - 2]).norm() < tol;
    let reference = lambda.coeffs.iter().sum();
    Ok(AbelEstimate {
        value: *trace.last().expect("nonempty"),
        converged,
        trace,
        reference,
    })
}
