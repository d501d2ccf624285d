//! Radial mixed-norm quasinorms: Bergman `H(p,q,α)`, Bergman-Sobolev
//! `H(p,q,α,β)`, Dirichlet-type `D^s`, and the little-oh decay diagnostic.

use rayon::prelude::*;

use crate::boundary::lp_mean;
use crate::error::{Error, Result};
use crate::series::{evaluate_circle, frac_derivative, CoefficientSeries};
use crate::sum::NeumaierSum;

pub const DEFAULT_NODES: usize = 512;
pub const DEFAULT_GRADE: f64 = 3.0;

/// Quadrature for `∫_0^1 F(r) dr` with nodes clustered toward `r = 1`.
///
/// Nodes are `r_k = φ(k/(K+1))` with `φ(u) = 1 - (1-u)^grade`, and each node
/// carries the length of the image under `φ` of its midpoint cell
/// `[(k - 1/2)/(K+1), (k + 1/2)/(K+1)]`. The first half cell is assigned to
/// an implicit node at `r = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    origin_weight: f64,
}

impl RadialGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn origin_weight(&self) -> f64 {
        self.origin_weight
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        graded_radial_grid(DEFAULT_NODES, DEFAULT_GRADE).expect("default grid parameters are valid")
    }
}

pub fn graded_radial_grid(k: usize, grade: f64) -> Result<RadialGrid> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("radial grid needs at least 2 nodes, got {k}")));
    }
    if !(grade >= 1.0) || !grade.is_finite() {
        return Err(Error::InvalidParameter(format!("grading exponent must be >= 1, got {grade}")));
    }
    let h = 1.0 / (k + 1) as f64;
    // 1 - φ(u), kept in this form to avoid cancellation near r = 1
    let gap = |u: f64| (1.0 - u).powf(grade);
    let nodes = (1..=k).map(|i| 1.0 - gap(i as f64 * h)).collect();
    let weights = (1..=k).map(|i| gap((i as f64 - 0.5) * h) - gap((i as f64 + 0.5) * h)).collect();
    Ok(RadialGrid {
        nodes,
        weights,
        origin_weight: 1.0 - gap(0.5 * h),
    })
}

/// Parameters of `H(p,q,α,β)`; `little_oh` selects the `H_0(p,∞,α,β)` reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedNormSpec {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub little_oh: bool,
}

impl MixedNormSpec {
    pub fn new(p: f64, q: f64, alpha: f64, beta: f64) -> Result<Self> {
        let spec = Self {
            p,
            q,
            alpha,
            beta,
            little_oh: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn bergman(p: f64, q: f64, alpha: f64) -> Result<Self> {
        Self::new(p, q, alpha, 0.0)
    }

    pub fn little_oh(p: f64, alpha: f64, beta: f64) -> Result<Self> {
        let spec = Self {
            p,
            q: f64::INFINITY,
            alpha,
            beta,
            little_oh: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0) || !(self.q > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "exponents must be positive, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "weight exponent must be positive, got {}",
                self.alpha
            )));
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "derivative order must be finite, got {}",
                self.beta
            )));
        }
        if self.little_oh && self.q.is_finite() {
            return Err(Error::InvalidParameter("the little-oh variant requires q = ∞".into()));
        }
        Ok(())
    }
}

/// `M_p(r_k, f)` at every grid node, computed in parallel.
pub fn radial_means(f: &CoefficientSeries, p: f64, grid: &RadialGrid, m: usize) -> Result<Vec<f64>> {
    grid.nodes.par_iter().map(|&r| lp_mean(&evaluate_circle(f, r, m)?, p)).collect()
}

/// `‖f‖_{H(p,q,α)}`; `spec.beta` is ignored.
pub fn bergman_quasinorm(f: &CoefficientSeries, spec: &MixedNormSpec, grid: &RadialGrid, m: usize) -> Result<f64> {
    spec.validate()?;
    if m < f.degree() + 1 {
        return Err(Error::Aliasing { m, degree: f.degree() });
    }
    let means = radial_means(f, spec.p, grid, m)?;
    let at_origin = f.coeffs()[0].norm();
    if spec.q.is_infinite() {
        let sup = means
            .iter()
            .zip(&grid.nodes)
            .map(|(&mp, &r)| mp * (1.0 - r).powf(spec.alpha))
            .fold(at_origin, f64::max);
        return Ok(sup);
    }
    let q = spec.q;
    let exponent = q * spec.alpha - 1.0;
    let mut acc = NeumaierSum::new();
    acc.add(grid.origin_weight * at_origin.powf(q));
    for ((&mp, &r), &w) in means.iter().zip(&grid.nodes).zip(&grid.weights) {
        acc.add(w * mp.powf(q) * (1.0 - r).powf(exponent));
    }
    Ok(acc.total().powf(1.0 / q))
}

/// `‖f‖_{H(p,q,α,β)} = ‖f^{[β]}‖_{H(p,q,α)}`.
pub fn sobolev_quasinorm(f: &CoefficientSeries, spec: &MixedNormSpec, grid: &RadialGrid, m: usize) -> Result<f64> {
    spec.validate()?;
    let g = frac_derivative(f, spec.beta)?;
    bergman_quasinorm(&g, spec, grid, m)
}

/// `‖f‖_{D^s} = ‖f‖_{H(s,s,1,1)}`.
pub fn dirichlet_norm(f: &CoefficientSeries, s: f64, grid: &RadialGrid, m: usize) -> Result<f64> {
    sobolev_quasinorm(f, &MixedNormSpec::new(s, s, 1.0, 1.0)?, grid, m)
}

/// Ratio of the largest value of `M_p(r, f^{[β]})(1 - r)^α` over the last
/// quarter of the grid to its global maximum. Small values indicate the
/// decay that characterises `H_0(p,∞,α,β)`.
pub fn h0_decay_metric(f: &CoefficientSeries, spec: &MixedNormSpec, grid: &RadialGrid, m: usize) -> Result<f64> {
    spec.validate()?;
    if spec.q.is_finite() {
        return Err(Error::InvalidParameter("decay metric is defined for q = ∞".into()));
    }
    let g = frac_derivative(f, spec.beta)?;
    let means = radial_means(&g, spec.p, grid, m)?;
    let profile: Vec<f64> = means
        .iter()
        .zip(&grid.nodes)
        .map(|(&mp, &r)| mp * (1.0 - r).powf(spec.alpha))
        .collect();
    let global = profile.iter().copied().fold(g.coeffs()[0].norm(), f64::max);
    if global == 0.0 {
        return Ok(0.0);
    }
    let tail_start = (3 * profile.len()) / 4;
    let tail = profile[tail_start..].iter().copied().fold(0.0, f64::max);
    Ok(tail / global)
}
