//! Quantities computed from equispaced samples on a circle: distribution
//! functions, decreasing rearrangements, Lorentz and Hardy-Lorentz
//! quasinorms, integral means, moduli of continuity and mean oscillation.
//!
//! The sample at index `j` sits at angle `2πj/M` and carries measure `1/M`,
//! so every quantity is the exact value for the step function that is
//! constant on each sample cell.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{evaluate_circle, CoefficientSeries};
use crate::sum::compensated_sum;

#[derive(Debug, Clone, PartialEq)]
pub struct CircleSamples {
    radius: f64,
    values: Vec<Complex64>,
}

impl CircleSamples {
    pub fn new(radius: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("at least one sample is required".into()));
        }
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { radius, values })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cyclic rotation by `k` samples, i.e. `T_h` with `h = 2πk/M`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut values = self.values.clone();
        values.rotate_left(k % self.values.len());
        Self {
            radius: self.radius,
            values,
        }
    }
}

/// Nonincreasing moduli of the samples, each carrying measure `step`.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementProfile {
    sorted_abs: Vec<f64>,
    step: f64,
}

impl RearrangementProfile {
    /// Builds a profile from arbitrary nonnegative values (sorted here).
    pub fn from_moduli(mut moduli: Vec<f64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidParameter("profile needs at least one value".into()));
        }
        if let Some(index) = moduli.iter().position(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::NonFinite { index });
        }
        moduli.sort_by(|a, b| b.total_cmp(a));
        let step = 1.0 / moduli.len() as f64;
        Ok(Self { sorted_abs: moduli, step })
    }

    pub fn sorted_abs(&self) -> &[f64] {
        &self.sorted_abs
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Discrete `f*(s) = sorted_abs[⌊sM⌋]` for `s` in `[0, 1)`.
    pub fn at(&self, s: f64) -> f64 {
        let m = self.sorted_abs.len();
        let idx = ((s * m as f64).floor().max(0.0) as usize).min(m - 1);
        self.sorted_abs[idx]
    }
}

/// `λ(s) = m{ |f| > s }`.
pub fn distribution(samples: &CircleSamples, s: f64) -> f64 {
    let count = samples.values.iter().filter(|v| v.norm() > s).count();
    count as f64 / samples.len() as f64
}

pub fn rearrangement(samples: &CircleSamples) -> RearrangementProfile {
    RearrangementProfile::from_moduli(samples.values.iter().map(|v| v.norm()).collect()).expect("circle samples are finite and nonempty")
}

fn check_lorentz(p: f64, q: f64) -> Result<()> {
    let valid = p > 0.0 && q > 0.0 && !p.is_nan() && !q.is_nan() && (p.is_finite() || q.is_infinite());
    if valid {
        Ok(())
    } else {
        Err(Error::InvalidLorentz { p, q })
    }
}

/// Lorentz quasinorm `‖f‖_{p,q}` of a step rearrangement.
///
/// For `q < ∞` the integral `∫ f*(s)^q s^{q/p - 1} ds` is evaluated in
/// closed form on each step. `p = ∞` is only accepted together with `q = ∞`.
pub fn lorentz_quasinorm(profile: &RearrangementProfile, p: f64, q: f64) -> Result<f64> {
    check_lorentz(p, q)?;
    let m = profile.sorted_abs.len() as f64;
    if p.is_infinite() {
        return Ok(profile.sorted_abs[0]);
    }
    if q.is_infinite() {
        let sup = profile
            .sorted_abs
            .iter()
            .enumerate()
            .map(|(j, &v)| v * ((j + 1) as f64 / m).powf(1.0 / p))
            .fold(0.0, f64::max);
        return Ok(sup);
    }
    let e = q / p;
    let total = compensated_sum(profile.sorted_abs.iter().enumerate().map(|(j, &v)| {
        let cell = ((j + 1) as f64 / m).powf(e) - (j as f64 / m).powf(e);
        v.powf(q) * cell
    }));
    Ok((total * p / q).powf(1.0 / q))
}

/// Choice of sample count for boundary computations on a polynomial of the
/// given degree: `oversample * (degree + 1)` rounded up to a power of two.
pub fn default_samples(degree: usize, oversample: usize) -> usize {
    ((degree + 1) * oversample.max(1)).next_power_of_two().max(64)
}

/// `‖f‖_{H^{p,q}}`, the Lorentz quasinorm of the boundary values.
pub fn hardy_lorentz_norm(f: &CoefficientSeries, p: f64, q: f64, m: usize) -> Result<f64> {
    check_lorentz(p, q)?;
    let samples = evaluate_circle(f, 1.0, m)?;
    lorentz_quasinorm(&rearrangement(&samples), p, q)
}

/// Discrete `M_p(r, f)`.
pub fn lp_mean(samples: &CircleSamples, p: f64) -> Result<f64> {
    lp_mean_of(samples.values(), p)
}

pub(crate) fn lp_mean_of(values: &[Complex64], p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("mean exponent must be positive, got {p}")));
    }
    if p.is_infinite() {
        return Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    let m = values.len() as f64;
    let total = if p == 2.0 {
        compensated_sum(values.iter().map(|v| v.norm_sqr()))
    } else {
        compensated_sum(values.iter().map(|v| v.norm().powf(p)))
    };
    Ok((total / m).powf(1.0 / p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifferenceOrder {
    /// `T_h f - f`
    First,
    /// `T_h f - 2f + T_{-h} f`
    Second,
}

/// `‖Δ_k f‖_p` for every grid shift `k = 1..=M/2`, where `Δ_k` is the first
/// or second difference with step `h = 2πk/M`. Entry `k - 1` holds shift `k`.
pub fn difference_norms(samples: &CircleSamples, order: DifferenceOrder, p: f64) -> Result<Vec<f64>> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("modulus exponent must be >= 1, got {p}")));
    }
    let v = samples.values();
    let m = v.len();
    let mut scratch = vec![Complex64::new(0.0, 0.0); m];
    (1..=(m / 2).max(1))
        .map(|k| {
            for (j, slot) in scratch.iter_mut().enumerate() {
                let fwd = v[(j + k) % m];
                *slot = match order {
                    DifferenceOrder::First => fwd - v[j],
                    DifferenceOrder::Second => fwd - v[j] * 2.0 + v[(j + m - k % m) % m],
                };
            }
            lp_mean_of(&scratch, p)
        })
        .collect()
}

/// `ω_s(f)(t)` (first order) or `Ω_s(f)(t)` (second order) restricted to
/// grid shifts `0 < |h| <= t`.
pub fn modulus_of_continuity(samples: &CircleSamples, order: DifferenceOrder, t: f64, p: f64) -> Result<f64> {
    let m = samples.len();
    let resolution = 2.0 * std::f64::consts::PI / m as f64;
    if !(t >= resolution * (1.0 - 1e-12)) {
        return Err(Error::BelowResolution { t, resolution });
    }
    let kmax = ((t / resolution) * (1.0 + 1e-12)).floor() as usize;
    let norms = difference_norms(samples, order, p)?;
    // Shifts beyond M/2 repeat earlier ones with the opposite sign.
    Ok(norms.iter().take(kmax.max(1)).copied().fold(0.0, f64::max))
}

/// Cumulative moduli `ω(t_k)` at the grid points `t_k = 2πk/M`, `k = 1..=M/2`.
pub fn modulus_profile(samples: &CircleSamples, order: DifferenceOrder, p: f64) -> Result<Vec<(f64, f64)>> {
    let m = samples.len();
    let norms = difference_norms(samples, order, p)?;
    let mut running = 0.0f64;
    Ok(norms
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            running = running.max(d);
            (2.0 * std::f64::consts::PI * (i + 1) as f64 / m as f64, running)
        })
        .collect())
}

/// Arc of `len` consecutive samples starting at `start` (cyclic).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleArc {
    pub start: usize,
    pub len: usize,
}

/// Dyadic arc lengths `M, M/2, ..., 2` at offsets that are multiples of the length.
pub fn aligned_dyadic_arcs(m: usize) -> Vec<SampleArc> {
    let mut arcs = Vec::new();
    let mut len = m;
    while len >= 2 {
        arcs.extend((0..m / len).map(|i| SampleArc { start: i * len, len }));
        len /= 2;
    }
    arcs
}

/// Dyadic arc lengths `M, M/2, ..., 2` at every sample offset. Invariant
/// under cyclic rotation of the samples.
pub fn sliding_dyadic_arcs(m: usize) -> Vec<SampleArc> {
    let mut arcs = vec![SampleArc { start: 0, len: m }];
    let mut len = m / 2;
    while len >= 2 {
        arcs.extend((0..m).map(|start| SampleArc { start, len }));
        len /= 2;
    }
    arcs
}

/// Mean oscillation `m(I)^{-1} ∫_I |f - f_I| dm` on one arc.
pub fn mean_oscillation(samples: &CircleSamples, arc: SampleArc) -> f64 {
    let v = samples.values();
    let m = v.len();
    let len = arc.len.clamp(1, m);
    let idx = |i: usize| (arc.start + i) % m;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..len {
        sum += v[idx(i)];
    }
    let avg = sum / len as f64;
    compensated_sum((0..len).map(|i| (v[idx(i)] - avg).norm())) / len as f64
}

/// Supremum of the mean oscillation over the supplied arcs.
pub fn bmoa_seminorm(samples: &CircleSamples, arcs: &[SampleArc]) -> f64 {
    arcs.iter().map(|&a| mean_oscillation(samples, a)).fold(0.0, f64::max)
}

/// Mean oscillation seminorm over the default sliding dyadic family.
pub fn bmoa_default(samples: &CircleSamples) -> f64 {
    bmoa_seminorm(samples, &sliding_dyadic_arcs(samples.len()))
}
