//! The individual theorem checks. Each one sweeps a test family over the
//! configured degrees and records ratios into named series; the verdict
//! rule in [`super::report`] does the rest.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{ReportBuilder, Role};
use crate::boundary::{lorentz_quasinorm, rearrangement};
use crate::error::{Error, Result};
use crate::family::{dilated_cauchy, random_polynomial, Generator, Member, TestFamily};
use crate::multiplier::{
    analytic_transform, apply_multiplier, duality_pairing, frozen_w_grid, space_norm, Resolution, SpaceFamily, SpaceSpec,
};
use crate::seq::{self, qstar, BlockedSeq, PowerWeight};
use crate::series::{cauchy_coefficient, cauchy_power, frac_derivative, frac_integral, CoefficientSeries};
use crate::special::gamma;

/// Shared sweep settings.
#[derive(Debug, Clone)]
pub struct CheckContext {
    pub degrees: Vec<usize>,
    pub seed: u64,
    pub resolution: Resolution,
}

pub(crate) type Params = BTreeMap<String, f64>;

pub(crate) fn param(params: &Params, key: &str) -> f64 {
    params[key]
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("parameter constraint violated: {what}")))
    }
}

impl CheckContext {
    fn norm(&self, f: &CoefficientSeries, family: SpaceFamily) -> Result<f64> {
        space_norm(
            f,
            &SpaceSpec {
                family,
                resolution: self.resolution,
            },
        )
    }

    fn members(&self, generators: Vec<Generator>) -> Result<Vec<Member>> {
        TestFamily::new(generators, self.degrees.clone(), self.seed).members()
    }
}

/// Evaluates `f` on every member in parallel, keeping member order.
fn sweep<T: Send>(members: &[Member], f: impl Fn(&Member) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    members.par_iter().map(f).collect()
}

/// Evaluates `f` on every degree in parallel, keeping degree order.
fn per_degree<T: Send>(degrees: &[usize], f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    degrees.par_iter().map(|&d| f(d)).collect()
}

fn hl(p: f64, q: f64) -> SpaceFamily {
    SpaceFamily::HardyLorentz { p, q }
}

fn mixed(p: f64, q: f64, alpha: f64, beta: f64) -> SpaceFamily {
    SpaceFamily::BergmanSobolev { p, q, alpha, beta }
}

fn probe_generators(cauchy: f64) -> Vec<Generator> {
    vec![
        Generator::Constant,
        Generator::Monomial,
        Generator::Random { draws: 3 },
        Generator::Lacunary,
        Generator::Cauchy(cauchy),
        Generator::DilatedCauchy(cauchy),
    ]
}

/// `H(p₀,q,β+1/p−1/p₀,β) ↪ H^{p,q} ↪ H(s,t,1/p−1/s)`.
pub(crate) fn nested_embedding(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [p0, p, s, q, t, beta] = ["p0", "p", "s", "q", "t", "beta"].map(|k| param(params, k));
    require(0.0 < p0 && p0 < p && p < s, "0 < p0 < p < s")?;
    require(0.0 < q && q <= t, "0 < q <= t")?;
    require(beta > 1.0 / p0 - 1.0 / p, "beta > 1/p0 - 1/p")?;
    let left = mixed(p0, q, beta + 1.0 / p - 1.0 / p0, beta);
    let middle = hl(p, q);
    let right = mixed(s, t, 1.0 / p - 1.0 / s, 0.0);

    b.declare("middle_over_left", Role::Bounded, None);
    b.declare("right_over_middle", Role::Bounded, None);
    b.declare("left_over_middle", Role::Control, None);
    let members = ctx.members(probe_generators(1.0 / p))?;
    let norms = sweep(&members, |m| {
        Ok((
            ctx.norm(&m.series, left)?,
            ctx.norm(&m.series, middle)?,
            ctx.norm(&m.series, right)?,
        ))
    })?;
    for (m, (l, mid, r)) in members.iter().zip(norms) {
        b.push("middle_over_left", m.degree, &m.tag, mid / l);
        b.push("right_over_middle", m.degree, &m.tag, r / mid);
        b.push("left_over_middle", m.degree, &m.tag, l / mid);
    }
    Ok(())
}

/// `Σ_{n≥1} n^{q(1−1/p)−1}|a_n|^q`, to the power `1/q`.
pub fn hl_coefficient_sum(f: &CoefficientSeries, p: f64, q: f64) -> f64 {
    let e = q * (1.0 - 1.0 / p) - 1.0;
    let terms = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, a)| (n as f64).powf(e) * a.norm().powf(q));
    crate::sum::compensated_sum(terms).powf(1.0 / q)
}

/// Coefficient inequality for `H^{p,q}` with `p < 1`.
pub(crate) fn hl_coefficient_inequality(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [p, q] = ["p", "q"].map(|k| param(params, k));
    require(0.0 < p && p < 1.0, "0 < p < 1")?;
    require(0.0 < q && q.is_finite(), "0 < q < inf")?;
    b.declare("coefficients_over_norm", Role::Bounded, None);
    b.declare("norm_over_coefficients", Role::Control, None);
    let members = ctx.members(probe_generators(1.0 / p))?;
    let values = sweep(&members, |m| {
        Ok((hl_coefficient_sum(&m.series, p, q), ctx.norm(&m.series, hl(p, q))?))
    })?;
    for (m, (lhs, rhs)) in members.iter().zip(values) {
        b.push("coefficients_over_norm", m.degree, &m.tag, lhs / rhs);
        if lhs > 0.0 {
            b.push("norm_over_coefficients", m.degree, &m.tag, rhs / lhs);
        }
    }
    Ok(())
}

/// Degree at which the Stirling sub-check compares Cauchy coefficients with
/// their asymptotic form.
pub const STIRLING_DEGREE: usize = 4096;

/// Sharpness of the Cauchy witness `g = (1−z)^{−1/p}` through its dilations
/// `g_r`, `r = 1 − 1/N`.
pub(crate) fn sharpness_cauchy(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let p = param(params, "p");
    require(0.0 < p && p < 1.0, "0 < p < 1")?;
    b.declare("weak_norm", Role::Bounded, None);
    b.declare("lorentz_q1_power", Role::LogLinear, None);
    b.declare("lorentz_q2_power", Role::LogLinear, None);
    b.declare("rearrangement_shape", Role::Band, Some("rearrangement_band"));
    b.declare("stirling", Role::Exact, Some("stirling_rel_tol"));
    b.declare("strong_norm_bounded", Role::Control, None);

    let rows = per_degree(&ctx.degrees, |n| {
        let g = dilated_cauchy(1.0 / p, n)?;
        let m = ctx.resolution.samples_for(g.degree())?;
        let profile = rearrangement(&crate::series::evaluate_circle(&g, 1.0, m)?);
        let weak = lorentz_quasinorm(&profile, p, f64::INFINITY)?;
        let q1 = lorentz_quasinorm(&profile, p, 1.0)?;
        let q2 = lorentz_quasinorm(&profile, p, 2.0)?.powi(2);
        let (lo_t, hi_t) = (8.0 / n as f64, 0.125);
        let band: Vec<f64> = profile
            .sorted_abs()
            .iter()
            .enumerate()
            .map(|(j, v)| ((j as f64 + 0.5) * profile.step(), *v))
            .filter(|(t, _)| *t >= lo_t && *t <= hi_t)
            .map(|(t, v)| v * t.powf(1.0 / p))
            .collect();
        let band_lo = band.iter().copied().fold(f64::INFINITY, f64::min);
        let band_hi = band.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok((n, weak, q1, q2, band_lo, band_hi))
    })?;
    for (n, weak, q1, q2, band_lo, band_hi) in rows {
        let tag = format!("dilated_cauchy({})", 1.0 / p);
        b.push("weak_norm", n, &tag, weak);
        b.push("lorentz_q1_power", n, &tag, q1);
        b.push("lorentz_q2_power", n, &tag, q2);
        if band_lo.is_finite() {
            b.push("rearrangement_shape", n, "band_min", band_lo);
            b.push("rearrangement_shape", n, "band_max", band_hi);
        }
        b.push("strong_norm_bounded", n, &tag, q1);
    }
    let n = STIRLING_DEGREE;
    let c = cauchy_coefficient(1.0 / p, n)?;
    let asymptotic = (n as f64).powf(1.0 / p - 1.0) / gamma(1.0 / p)?;
    b.push("stirling", n, "cauchy_coefficient", (c / asymptotic - 1.0).abs());
    Ok(())
}

/// Parseval anchor radii.
pub const PARSEVAL_RADII: [f64; 3] = [0.3, 0.7, 0.99];

/// Relative gap between `M₂(r, f)` from circle samples and the coefficient
/// form `(Σ|a_n|² r^{2n})^{1/2}`.
pub fn parseval_gap(f: &CoefficientSeries, r: f64, m: usize) -> Result<f64> {
    let sampled = crate::boundary::lp_mean(&crate::series::evaluate_circle(f, r, m)?, 2.0)?;
    let exact = crate::sum::compensated_sum(f.coeffs().iter().enumerate().map(|(n, a)| a.norm_sqr() * r.powi(2 * n as i32))).sqrt();
    Ok(if exact == 0.0 { sampled } else { (sampled - exact).abs() / exact })
}

/// `H(2,q,α,β) = ℓ(2,q,β−α)`.
pub(crate) fn blocked_parseval(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [q, alpha, beta] = ["q", "alpha", "beta"].map(|k| param(params, k));
    require(q > 0.0, "q > 0")?;
    require(alpha > 0.0, "alpha > 0")?;
    let sob = mixed(2.0, q, alpha, beta);
    let blocked = SpaceFamily::Blocked {
        p: 2.0,
        q,
        alpha: beta - alpha,
    };
    let shifted = SpaceFamily::Blocked {
        p: 2.0,
        q,
        alpha: beta - alpha + 0.5,
    };
    b.declare("sobolev_over_blocked", Role::Equivalent, Some("equivalence_spread_max"));
    b.declare("parseval", Role::Exact, Some("parseval_rel_tol"));
    b.declare("shifted_weight", Role::Control, None);
    let mut generators = probe_generators(1.0);
    generators.insert(5, Generator::Cauchy(0.5));
    let members = ctx.members(generators)?;
    let values = sweep(&members, |m| {
        let s = ctx.norm(&m.series, sob)?;
        let bl = ctx.norm(&m.series, blocked)?;
        let sh = ctx.norm(&m.series, shifted)?;
        let mm = ctx.resolution.samples_for(m.series.degree())?;
        let gap = PARSEVAL_RADII
            .iter()
            .map(|&r| parseval_gap(&m.series, r, mm))
            .collect::<Result<Vec<_>>>()?;
        Ok((s, bl, sh, gap.into_iter().fold(0.0, f64::max)))
    })?;
    for (m, (s, bl, sh, gap)) in members.iter().zip(values) {
        b.push("sobolev_over_blocked", m.degree, &m.tag, s / bl);
        b.push("parseval", m.degree, &m.tag, gap);
        b.push("shifted_weight", m.degree, &m.tag, sh / s);
    }
    Ok(())
}

fn unit_phase(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Seeded sequence whose weighted dyadic blocks have `ℓ^s` norm 1 (when
/// `outer` is ∞) or `(k+1)^{−2/outer}`, normalised to blocked norm 1.
pub fn block_normalised_sequence(len: usize, s: f64, outer: f64, alpha: f64, seed: u64) -> CoefficientSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight = PowerWeight::new(alpha);
    let mut coeffs: Vec<Complex64> = (0..len).map(|_| unit_phase(&mut rng) * rng.gen_range(0.5..1.0)).collect();
    let blocked = BlockedSeq::new(coeffs.clone());
    for k in 0..blocked.num_blocks() {
        let target = if outer.is_infinite() {
            1.0
        } else {
            (k as f64 + 1.0).powf(-2.0 / outer)
        };
        let range = seq::block_range(k);
        let end = range.end.min(len);
        let current = seq::lp_seq_norm(&weight.apply(&coeffs)[range.start..end], s, PowerWeight::UNWEIGHTED);
        for c in &mut coeffs[range.start..end] {
            *c *= target / current;
        }
    }
    let total = seq::blocked_norm(&BlockedSeq::new(coeffs.clone()), s, outer, weight);
    CoefficientSeries::new(coeffs.into_iter().map(|c| c / total).collect()).expect("finite entries")
}

/// `(H^{p,q}, ℓ^s) = ℓ(s, q∗s, 1/p − 1)`.
pub(crate) fn seq_multiplier(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [p, q, s] = ["p", "q", "s"].map(|k| param(params, k));
    require(0.0 < p && p < 1.0, "0 < p < 1")?;
    require(0.0 < q && q.is_finite(), "0 < q < inf")?;
    require(s > 0.0, "s > 0")?;
    let outer = qstar(q, s);
    let weight = 1.0 / p - 1.0;
    let lambda = |len: usize| block_normalised_sequence(len, s, outer, weight, ctx.seed);
    let target = SpaceFamily::LpSeq { s, alpha: 0.0 };

    b.declare("sufficiency", Role::Bounded, None);
    b.declare("class_norm", Role::Bounded, None);
    b.declare("inflated_block", Role::Control, None);
    let members = ctx.members(probe_generators(1.0 / p))?;
    let values = sweep(&members, |m| {
        let lam = lambda(m.series.degree() + 1);
        let d = ctx.norm(&m.series, hl(p, q))?;
        let ratio = ctx.norm(&apply_multiplier(&lam, &m.series), target)? / d;
        let inflated = if matches!(m.tag.as_str(), t if t.starts_with("dilated_cauchy")) {
            let k = seq::block_of(m.degree);
            let boost = m.degree as f64;
            let mut c = lam.coeffs().to_vec();
            let range = seq::block_range(k);
            let end = range.end.min(c.len());
            for v in &mut c[range.start..end] {
                *v *= boost;
            }
            Some(ctx.norm(&apply_multiplier(&CoefficientSeries::new(c)?, &m.series), target)? / d)
        } else {
            None
        };
        Ok((ratio, inflated))
    })?;
    for (m, (ratio, inflated)) in members.iter().zip(values) {
        b.push("sufficiency", m.degree, &m.tag, ratio);
        if let Some(v) = inflated {
            b.push("inflated_block", m.degree, &m.tag, v);
        }
    }
    for &n in &ctx.degrees {
        let lam = lambda(n + 1);
        b.push(
            "class_norm",
            n,
            "lambda",
            seq::blocked_norm(&BlockedSeq::new(lam.into_coeffs()), s, outer, PowerWeight::new(weight)),
        );
    }
    Ok(())
}

/// Worst relative error of `(λ∗F)(w) = Γ(κ)^{−1} λ^{[κ−1]}(w)` over the frozen
/// grid, for `F = (1−z)^{−κ}` truncated at the degree of `λ`.
pub fn fractional_identity_gap(lambda: &CoefficientSeries, kappa: f64, f_exponent: f64) -> Result<f64> {
    let grid = frozen_w_grid();
    let f = cauchy_power(f_exponent, lambda.degree())?;
    let lhs = analytic_transform(&apply_multiplier(lambda, &f), &grid)?;
    let scale = 1.0 / gamma(kappa)?;
    let rhs = analytic_transform(&frac_derivative(lambda, kappa - 1.0)?, &grid)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| (l - r * scale).norm() / (1.0 + (r * scale).norm()))
        .fold(0.0, f64::max))
}

struct MultiplierSetup {
    domain: SpaceFamily,
    target: SpaceFamily,
    class: SpaceFamily,
    kappa: f64,
    lambda: Box<dyn Fn(usize) -> Result<CoefficientSeries> + Sync>,
}

/// Series shared by the mixed-norm and Hardy multiplier checks.
fn multiplier_series(ctx: &CheckContext, setup: &MultiplierSetup, b: &mut ReportBuilder) -> Result<()> {
    b.declare("sufficiency", Role::Bounded, None);
    b.declare("class_norm", Role::Bounded, None);
    b.declare("fractional_identity", Role::Exact, Some("pairing_rel_tol"));
    b.declare("necessity_witness", Role::Bounded, None);
    b.declare("all_ones", Role::Control, None);

    let members = ctx.members(vec![
        Generator::Constant,
        Generator::Monomial,
        Generator::Random { draws: 3 },
        Generator::Lacunary,
        Generator::Cauchy(setup.kappa),
    ])?;
    let ratios = sweep(&members, |m| {
        let lam = (setup.lambda)(m.series.degree())?;
        Ok(ctx.norm(&apply_multiplier(&lam, &m.series), setup.target)? / ctx.norm(&m.series, setup.domain)?)
    })?;
    for (m, r) in members.iter().zip(ratios) {
        b.push("sufficiency", m.degree, &m.tag, r);
    }

    let rows = per_degree(&ctx.degrees, |n| {
        let lam_n = (setup.lambda)(n)?;
        let class = ctx.norm(&lam_n, setup.class)?;
        let identity = fractional_identity_gap(&lam_n, setup.kappa, setup.kappa)?;
        let witness = dilated_cauchy(setup.kappa, n)?;
        let d = ctx.norm(&witness, setup.domain)?;
        let lam = (setup.lambda)(witness.degree())?;
        let necessity = ctx.norm(&apply_multiplier(&lam, &witness), setup.target)? / d;
        let ones = ctx.norm(&witness, setup.target)? / d;
        Ok((n, class, identity, necessity, ones))
    })?;
    let tag = format!("dilated_cauchy({})", setup.kappa);
    for (n, class, identity, necessity, ones) in rows {
        b.push("class_norm", n, "lambda", class);
        b.push("fractional_identity", n, "lambda", identity);
        b.push("necessity_witness", n, &tag, necessity);
        b.push("all_ones", n, &tag, ones);
    }
    Ok(())
}

/// Admissible multiplier `λ = D_θ (1−z)^{−c}` truncated at degree `n`.
fn admissible_lambda(theta: f64, c: f64) -> impl Fn(usize) -> Result<CoefficientSeries> + Sync {
    move |n| frac_integral(&cauchy_power(c, n)?, theta)
}

/// Multipliers from `H^{p,q}` (α = 0) or `H(p,q,α)` (α > 0) into
/// `H(s,t,β,γ)`; the multiplier space is `H(s, q∗t, β, α + 1/p − 1 + γ)`.
pub(crate) fn mixed_multiplier(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [p, q, s, t, alpha, beta, gamma_] = ["p", "q", "s", "t", "alpha", "beta", "gamma"].map(|k| param(params, k));
    require(p > 0.0 && q > 0.0 && s > 0.0 && t > 0.0, "p, q, s, t > 0")?;
    require(alpha >= 0.0, "alpha >= 0")?;
    require(beta > 0.0, "beta > 0")?;
    let domain = if alpha == 0.0 { hl(p, q) } else { mixed(p, q, alpha, 0.0) };
    let outer = qstar(q, t);
    let theta = alpha + 1.0 / p - 1.0 + gamma_;
    let c = 1.0 / s + beta - if outer.is_finite() { 0.25 } else { 0.0 };
    let setup = MultiplierSetup {
        domain,
        target: mixed(s, t, beta, gamma_),
        class: mixed(s, outer, beta, theta),
        kappa: alpha + 1.0 / p,
        lambda: Box::new(admissible_lambda(theta, c)),
    };
    multiplier_series(ctx, &setup, b)
}

/// `(H^{p,q}, H^s) = H(s,∞,1,1/p)`, with the Dirichlet-type chains
/// `𝒟^s ↪ H^s ↪ H(s,2,1,1)` (s ≤ 2) and their reverse (s ≥ 2).
pub(crate) fn hardy_multiplier(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [p, q, s] = ["p", "q", "s"].map(|k| param(params, k));
    require(0.0 < s && s.is_finite(), "0 < s < inf")?;
    require(0.0 < p && p < 1f64.min(s), "0 < p < min(1, s)")?;
    require(0.0 < q && q <= 2f64.min(s), "0 < q <= min(2, s)")?;
    let hardy = SpaceFamily::HardySobolev { s, beta: 0.0 };
    let dirichlet = mixed(s, s, 1.0, 1.0);
    let area = mixed(s, 2.0, 1.0, 1.0);

    if s <= 2.0 {
        b.declare("dirichlet_into_hardy", Role::Bounded, None);
        b.declare("hardy_into_area", Role::Bounded, None);
    }
    if s >= 2.0 {
        b.declare("area_into_hardy", Role::Bounded, None);
        b.declare("hardy_into_dirichlet", Role::Bounded, None);
    }
    let members = ctx.members(vec![
        Generator::Constant,
        Generator::Monomial,
        Generator::Random { draws: 3 },
        Generator::Lacunary,
        Generator::Cauchy(1.0 / p),
    ])?;
    let norms = sweep(&members, |m| {
        Ok((
            ctx.norm(&m.series, dirichlet)?,
            ctx.norm(&m.series, hardy)?,
            ctx.norm(&m.series, area)?,
        ))
    })?;
    for (m, &(d, h, a)) in members.iter().zip(&norms) {
        if s <= 2.0 {
            b.push("dirichlet_into_hardy", m.degree, &m.tag, h / d);
            b.push("hardy_into_area", m.degree, &m.tag, a / h);
        }
        if s >= 2.0 {
            b.push("area_into_hardy", m.degree, &m.tag, h / a);
            b.push("hardy_into_dirichlet", m.degree, &m.tag, d / h);
        }
    }
    if s < 2.0 {
        b.declare("lacunary_swap", Role::Probe, None);
        for (m, &(d, h, _)) in members.iter().zip(&norms) {
            if m.tag == "lacunary" {
                b.push("lacunary_swap", m.degree, &m.tag, d / h);
            }
        }
    }

    let theta = 1.0 / p;
    let c = 1.0 + 1.0 / s;
    let setup = MultiplierSetup {
        domain: hl(p, q),
        target: hardy,
        class: mixed(s, f64::INFINITY, 1.0, theta),
        kappa: 1.0 / p,
        lambda: Box::new(admissible_lambda(theta, c)),
    };
    multiplier_series(ctx, &setup, b)?;

    if s == 2.0 {
        b.declare("blocked_route", Role::Bounded, None);
        let outer = qstar(q, 2.0);
        for &n in &ctx.degrees {
            let lam = (setup.lambda)(n)?;
            let v = seq::blocked_norm(&BlockedSeq::new(lam.into_coeffs()), 2.0, outer, PowerWeight::new(1.0 / p - 1.0));
            b.push("blocked_route", n, "lambda", v);
        }
    }
    Ok(())
}

/// Bounded functionals on `H^{p,q}` from `g ∈ H(∞, q′, 1, 1/p)`.
pub(crate) fn duality_pairing_check(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [p, q] = ["p", "q"].map(|k| param(params, k));
    require(0.0 < p && p < 1.0, "0 < p < 1")?;
    require(0.0 < q && q.is_finite(), "0 < q < inf")?;
    let q_dual = if q <= 1.0 { f64::INFINITY } else { q / (q - 1.0) };
    let dual = mixed(f64::INFINITY, q_dual, 1.0, 1.0 / p);
    let seed = ctx.seed;
    let g_of = |n: usize| -> Result<CoefficientSeries> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = cauchy_power(0.75, n)?;
        let signed = CoefficientSeries::new(base.coeffs().iter().map(|c| if rng.gen_bool(0.5) { *c } else { -*c }).collect())?;
        let g = frac_integral(&signed, 1.0 / p)?;
        let norm = ctx.norm(&g, dual)?;
        Ok(g.scale(Complex64::new(1.0 / norm, 0.0)))
    };
    b.declare("pairing_over_norm", Role::Bounded, None);
    b.declare("dual_norm", Role::Probe, None);
    b.declare("unnormalised_cauchy", Role::Control, None);
    let members = ctx.members(probe_generators(1.0 / p))?;
    let values = sweep(&members, |m| {
        let n = m.series.degree();
        let d = ctx.norm(&m.series, hl(p, q))?;
        let g = g_of(n)?;
        let control = cauchy_power(1.0 / p + 1.0, n)?;
        Ok((
            duality_pairing(&g, &m.series).norm() / d,
            duality_pairing(&control, &m.series).norm() / d,
        ))
    })?;
    for (m, (ratio, control)) in members.iter().zip(values) {
        b.push("pairing_over_norm", m.degree, &m.tag, ratio);
        b.push("unnormalised_cauchy", m.degree, &m.tag, control);
    }
    for &n in &ctx.degrees {
        // g is normalised, so this records only the accuracy of that step
        b.push("dual_norm", n, "g", ctx.norm(&g_of(n)?, dual)?);
    }
    Ok(())
}

/// Lipschitz, Zygmund and BMOA identifications with mixed-norm spaces.
pub(crate) fn lipschitz_identifications(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [alpha, s] = ["alpha", "s"].map(|k| param(params, k));
    require(0.0 < alpha && alpha < 1.0, "0 < alpha < 1")?;
    require(s >= 1.0, "s >= 1")?;
    let hardy = SpaceFamily::HardySobolev { s, beta: 0.0 };
    b.declare("lipschitz_over_mixed", Role::Equivalent, Some("equivalence_spread_max"));
    b.declare("zygmund_over_mixed", Role::Equivalent, Some("equivalence_spread_max"));
    b.declare("bmoa_over_mixed", Role::Bounded, None);
    b.declare("mismatched_exponent", Role::Control, None);
    b.declare("lacunary_bloch", Role::Probe, None);
    b.declare("lacunary_bmoa", Role::Probe, None);
    let members = ctx.members(vec![
        Generator::Constant,
        Generator::Monomial,
        Generator::Random { draws: 3 },
        Generator::Lacunary,
        Generator::Cauchy(0.5),
    ])?;
    let values = sweep(&members, |m| {
        let f = &m.series;
        let h = ctx.norm(f, hardy)?;
        let lip = h + ctx.norm(f, SpaceFamily::Lipschitz { alpha, s })?;
        let zyg = h + ctx.norm(f, SpaceFamily::Zygmund { s })?;
        Ok([
            lip / ctx.norm(f, mixed(s, f64::INFINITY, 1.0 - alpha, 1.0))?,
            zyg / ctx.norm(f, mixed(s, f64::INFINITY, 1.0, 2.0))?,
            ctx.norm(f, SpaceFamily::Bmoa)? / ctx.norm(f, mixed(f64::INFINITY, 2.0, 1.0, 1.0))?,
            lip / ctx.norm(f, mixed(s, f64::INFINITY, 1.0 - alpha + 0.25, 1.0))?,
        ])
    })?;
    for (m, [lip, zyg, bmoa, control]) in members.iter().zip(values) {
        b.push("lipschitz_over_mixed", m.degree, &m.tag, lip);
        b.push("zygmund_over_mixed", m.degree, &m.tag, zyg);
        b.push("bmoa_over_mixed", m.degree, &m.tag, bmoa);
        b.push("mismatched_exponent", m.degree, &m.tag, control);
    }
    let demo = per_degree(&ctx.degrees, |n| {
        let g = CoefficientSeries::lacunary(n);
        Ok((n, ctx.norm(&g, SpaceFamily::Bloch)?, ctx.norm(&g, SpaceFamily::Bmoa)?))
    })?;
    for (n, bloch, bmoa) in demo {
        b.push("lacunary_bloch", n, "lacunary", bloch);
        b.push("lacunary_bmoa", n, "lacunary", bmoa);
    }
    Ok(())
}

/// Number of seeded polynomials per degree in the pairing identity check.
pub const PAIRING_DRAWS: usize = 100;

/// `g ∗ F = Γ(α+1/p)^{−1} g^{[α+1/p−1]}` for `F = (1−z)^{−(α+1/p)}`.
pub(crate) fn pairing_identity(ctx: &CheckContext, params: &Params, b: &mut ReportBuilder) -> Result<()> {
    let [alpha, p] = ["alpha", "p"].map(|k| param(params, k));
    require(alpha > 0.0 && p > 0.0, "alpha, p > 0")?;
    let kappa = alpha + 1.0 / p;
    b.declare("identity", Role::Exact, Some("pairing_rel_tol"));
    b.declare("shifted_order", Role::Control, Some("pairing_rel_tol"));
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let seeds: Vec<u64> = (0..PAIRING_DRAWS).map(|_| rng.gen()).collect();
    for &n in &ctx.degrees {
        let gaps = seeds
            .par_iter()
            .map(|&sd| {
                let g = random_polynomial(n, sd);
                Ok((
                    fractional_identity_gap(&g, kappa, kappa)?,
                    fractional_identity_gap(&g, kappa, kappa + 0.25)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, (exact, shifted)) in gaps.into_iter().enumerate() {
            b.push("identity", n, format!("random#{i}"), exact);
            b.push("shifted_order", n, format!("random#{i}"), shifted);
        }
    }
    Ok(())
}
