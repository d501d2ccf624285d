//! Coefficient multipliers `B_λ`, quasinorm dispatch over space
//! descriptions, empirical operator quasinorms, the Abel-limit duality
//! pairing and the analytic transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boundary::{self, bmoa_default, default_samples, lp_mean, modulus_profile, DifferenceOrder};
use crate::error::{Error, Result};
use crate::family::{Member, TestFamily};
use crate::mixed::{self, graded_radial_grid, MixedNormSpec, RadialGrid};
use crate::seq::{self, BlockedSeq, PowerWeight};
use crate::series::{evaluate_circle, frac_derivative, hadamard, CoefficientSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceFamily {
    HardyLorentz {
        p: f64,
        q: f64,
    },
    BergmanSobolev {
        p: f64,
        q: f64,
        alpha: f64,
        beta: f64,
    },
    Blocked {
        p: f64,
        q: f64,
        alpha: f64,
    },
    LpSeq {
        s: f64,
        alpha: f64,
    },
    Ces {
        s: f64,
    },
    /// `H(∞,∞,1,1)`
    Bloch,
    /// Decay metric of `H_0(∞,∞,1,1)`.
    LittleBlochMetric,
    Bmoa,
    /// `sup_t ω_s(f)(t) / t^α`
    Lipschitz {
        alpha: f64,
        s: f64,
    },
    /// `sup_t Ω_s(f)(t) / t`
    Zygmund {
        s: f64,
    },
    /// `‖f^{[β]}‖_{H^s}`
    HardySobolev {
        s: f64,
        beta: f64,
    },
}

/// Numerical controls: sample count `m` on circles (derived from the degree
/// with `oversample` when absent) and the radial grid `(k, grade)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    pub m: Option<usize>,
    pub oversample: usize,
    pub k: usize,
    pub grade: f64,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            m: None,
            oversample: 4,
            k: mixed::DEFAULT_NODES,
            grade: mixed::DEFAULT_GRADE,
        }
    }
}

impl Resolution {
    pub fn samples_for(&self, degree: usize) -> Result<usize> {
        match self.m {
            Some(m) if m < degree + 1 => Err(Error::Aliasing { m, degree }),
            Some(m) if !m.is_power_of_two() => Err(Error::NotPowerOfTwo(m)),
            Some(m) => Ok(m),
            None => Ok(default_samples(degree, self.oversample)),
        }
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        graded_radial_grid(self.k, self.grade)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceSpec {
    pub family: SpaceFamily,
    pub resolution: Resolution,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {x}")))
    }
}

impl SpaceSpec {
    pub fn new(family: SpaceFamily) -> Result<Self> {
        let spec = Self {
            family,
            resolution: Resolution::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_resolution(mut self, resolution: Resolution) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        use SpaceFamily::*;
        match self.family {
            HardyLorentz { p, q } => {
                positive("p", p)?;
                positive("q", q)?;
                if p.is_infinite() && q.is_finite() {
                    return Err(Error::InvalidLorentz { p, q });
                }
            }
            BergmanSobolev { p, q, alpha, beta } => {
                MixedNormSpec::new(p, q, alpha, beta)?;
            }
            Blocked { p, q, alpha } => {
                positive("p", p)?;
                positive("q", q)?;
                if !alpha.is_finite() {
                    return Err(Error::InvalidParameter("weight exponent must be finite".into()));
                }
            }
            LpSeq { s, alpha } => {
                positive("s", s)?;
                if !alpha.is_finite() {
                    return Err(Error::InvalidParameter("weight exponent must be finite".into()));
                }
            }
            Ces { s } => {
                if !(s > 1.0 && s.is_finite()) {
                    return Err(Error::InvalidParameter(format!("ces exponent must lie in (1, ∞), got {s}")));
                }
            }
            Bloch | LittleBlochMetric | Bmoa => {}
            Lipschitz { alpha, s } => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    return Err(Error::InvalidParameter(format!("Lipschitz order must lie in (0, 1], got {alpha}")));
                }
                if !(s >= 1.0) {
                    return Err(Error::InvalidParameter(format!("Lipschitz mean exponent must be >= 1, got {s}")));
                }
            }
            Zygmund { s } => {
                if !(s >= 1.0) {
                    return Err(Error::InvalidParameter(format!("Zygmund mean exponent must be >= 1, got {s}")));
                }
            }
            HardySobolev { s, beta } => {
                positive("s", s)?;
                if !beta.is_finite() {
                    return Err(Error::InvalidParameter("derivative order must be finite".into()));
                }
            }
        }
        if self.resolution.k < 2 || !(self.resolution.grade >= 1.0) {
            return Err(Error::InvalidParameter("radial resolution needs k >= 2 and grade >= 1".into()));
        }
        Ok(())
    }
}

/// `sup_k ω(t_k) / t_k^order` over grid shifts.
fn modulus_ratio_sup(f: &CoefficientSeries, m: usize, order: DifferenceOrder, s: f64, power: f64) -> Result<f64> {
    let samples = evaluate_circle(f, 1.0, m)?;
    Ok(modulus_profile(&samples, order, s)?
        .into_iter()
        .map(|(t, w)| w / t.powf(power))
        .fold(0.0, f64::max))
}

/// Quasinorm (or seminorm) of `f` in the described space.
pub fn space_norm(f: &CoefficientSeries, spec: &SpaceSpec) -> Result<f64> {
    use SpaceFamily::*;
    spec.validate()?;
    let res = &spec.resolution;
    let m = res.samples_for(f.degree())?;
    match spec.family {
        HardyLorentz { p, q } => boundary::hardy_lorentz_norm(f, p, q, m),
        BergmanSobolev { p, q, alpha, beta } => mixed::sobolev_quasinorm(f, &MixedNormSpec::new(p, q, alpha, beta)?, &res.grid()?, m),
        Blocked { p, q, alpha } => Ok(seq::blocked_norm(
            &BlockedSeq::new(f.coeffs().to_vec()),
            p,
            q,
            PowerWeight::new(alpha),
        )),
        LpSeq { s, alpha } => Ok(seq::lp_seq_norm(f.coeffs(), s, PowerWeight::new(alpha))),
        Ces { s } => Ok(seq::ces_norm(f.coeffs(), s, f.degree() + 1)),
        Bloch => mixed::sobolev_quasinorm(f, &MixedNormSpec::new(f64::INFINITY, f64::INFINITY, 1.0, 1.0)?, &res.grid()?, m),
        LittleBlochMetric => mixed::h0_decay_metric(f, &MixedNormSpec::little_oh(f64::INFINITY, 1.0, 1.0)?, &res.grid()?, m),
        Bmoa => Ok(bmoa_default(&evaluate_circle(f, 1.0, m)?)),
        Lipschitz { alpha, s } => modulus_ratio_sup(f, m, DifferenceOrder::First, s, alpha),
        Zygmund { s } => modulus_ratio_sup(f, m, DifferenceOrder::Second, s, 1.0),
        HardySobolev { s, beta } => lp_mean(&evaluate_circle(&frac_derivative(f, beta)?, 1.0, m)?, s),
    }
}

/// `B_λ f`, the Hadamard product read as a multiplier action.
pub fn apply_multiplier(lambda: &CoefficientSeries, f: &CoefficientSeries) -> CoefficientSeries {
    hadamard(lambda, f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSup {
    pub degree: usize,
    pub max_ratio: f64,
    pub argmax_tag: String,
}

/// Empirical lower bound on `‖B_λ‖` from `domain` to `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpNormEstimate {
    pub sup_ratio: f64,
    pub argmax_tag: String,
    pub argmax_degree: usize,
    pub per_degree: Vec<DegreeSup>,
    /// Members skipped because their domain norm vanished.
    pub skipped: Vec<String>,
}

pub fn opnorm_estimate(lambda: &CoefficientSeries, domain: &SpaceSpec, target: &SpaceSpec, family: &TestFamily) -> Result<OpNormEstimate> {
    let members = family.members()?;
    if members.is_empty() {
        return Err(Error::InvalidParameter("test family is empty".into()));
    }
    let ratios: Vec<(Member, Option<f64>)> = members
        .into_par_iter()
        .map(|m| {
            let d = space_norm(&m.series, domain)?;
            if !(d > 0.0) {
                return Ok((m, None));
            }
            let t = space_norm(&apply_multiplier(lambda, &m.series), target)?;
            Ok((m, Some(t / d)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut per_degree: Vec<DegreeSup> = Vec::new();
    let mut skipped = Vec::new();
    let mut best: Option<(f64, String, usize)> = None;
    for (m, ratio) in &ratios {
        let Some(ratio) = *ratio else {
            log::warn!("skipping family member {} at degree {}: zero domain norm", m.tag, m.degree);
            skipped.push(format!("{}@{}", m.tag, m.degree));
            continue;
        };
        match per_degree.iter_mut().find(|d| d.degree == m.degree) {
            Some(d) if ratio > d.max_ratio => {
                d.max_ratio = ratio;
                d.argmax_tag = m.tag.clone();
            }
            Some(_) => {}
            None => per_degree.push(DegreeSup {
                degree: m.degree,
                max_ratio: ratio,
                argmax_tag: m.tag.clone(),
            }),
        }
        if best.as_ref().is_none_or(|b| ratio > b.0) {
            best = Some((ratio, m.tag.clone(), m.degree));
        }
    }
    let (sup_ratio, argmax_tag, argmax_degree) =
        best.ok_or_else(|| Error::InvalidParameter("every family member has zero domain norm".into()))?;
    Ok(OpNormEstimate {
        sup_ratio,
        argmax_tag,
        argmax_degree,
        per_degree,
        skipped,
    })
}

/// `Λ_g(f) = lim_{r→1} Σ a_n g_n r^n`, which for finite sequences is the
/// diagonal sum `Σ a_n g_n`.
pub fn duality_pairing(g: &CoefficientSeries, f: &CoefficientSeries) -> Complex64 {
    g.coeffs().iter().zip(f.coeffs()).map(|(a, b)| a * b).sum()
}

/// `g_λ(w) = Σ λ_n w^n` at points of the open disk.
pub fn analytic_transform(lambda: &CoefficientSeries, points: &[Complex64]) -> Result<Vec<Complex64>> {
    points
        .iter()
        .map(|&w| {
            let modulus = w.norm();
            if !(modulus < 1.0) {
                return Err(Error::PointOutsideDisk { modulus });
            }
            Ok(lambda.eval(w))
        })
        .collect()
}

/// Radii `{0, 0.5, 0.9}` times 16 equispaced angles.
pub fn frozen_w_grid() -> Vec<Complex64> {
    [0.0, 0.5, 0.9]
        .iter()
        .flat_map(|&r| (0..16).map(move |j| Complex64::from_polar(r, 2.0 * PI * j as f64 / 16.0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Generator;
    use crate::series::cauchy_power;

    fn spec(family: SpaceFamily) -> SpaceSpec {
        SpaceSpec::new(family).unwrap()
    }

    #[test]
    fn space_norm_examples() {
        let one = CoefficientSeries::constant(1.0);
        assert!((space_norm(&one, &spec(SpaceFamily::Bloch)).unwrap() - 1.0).abs() < 1e-15);

        let u1 = CoefficientSeries::monomial(1);
        let lip = space_norm(
            &u1,
            &spec(SpaceFamily::Lipschitz {
                alpha: 0.5,
                s: f64::INFINITY,
            }),
        )
        .unwrap();
        // oracle: sup over grid shifts of 2 sin(t/2) / sqrt(t)
        let m = default_samples(1, 4);
        let oracle = (1..=m / 2)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / m as f64;
                2.0 * (t / 2.0).sin() / t.sqrt()
            })
            .fold(0.0, f64::max);
        assert!(lip > 0.0 && lip.is_finite());
        assert!((lip - oracle).abs() < 1e-12);

        let zero = CoefficientSeries::zero(4);
        let all = [
            SpaceFamily::HardyLorentz { p: 0.5, q: 1.0 },
            SpaceFamily::BergmanSobolev {
                p: 1.0,
                q: 2.0,
                alpha: 0.5,
                beta: 1.0,
            },
            SpaceFamily::Blocked {
                p: 2.0,
                q: 1.0,
                alpha: -1.0,
            },
            SpaceFamily::LpSeq { s: 2.0, alpha: 0.0 },
            SpaceFamily::Ces { s: 2.0 },
            SpaceFamily::Bloch,
            SpaceFamily::LittleBlochMetric,
            SpaceFamily::Bmoa,
            SpaceFamily::Lipschitz { alpha: 0.5, s: 2.0 },
            SpaceFamily::Zygmund { s: f64::INFINITY },
            SpaceFamily::HardySobolev { s: 2.0, beta: 1.0 },
        ];
        for family in all {
            assert_eq!(space_norm(&zero, &spec(family)).unwrap(), 0.0, "{family:?}");
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(SpaceSpec::new(SpaceFamily::HardyLorentz { p: f64::INFINITY, q: 1.0 }).is_err());
        assert!(SpaceSpec::new(SpaceFamily::Ces { s: 1.0 }).is_err());
        assert!(SpaceSpec::new(SpaceFamily::BergmanSobolev {
            p: 1.0,
            q: 1.0,
            alpha: -1.0,
            beta: 0.0
        })
        .is_err());
    }

    #[test]
    fn resolution_too_small_is_reported() {
        let s = SpaceSpec::new(SpaceFamily::HardyLorentz { p: 1.0, q: 1.0 })
            .unwrap()
            .with_resolution(Resolution {
                m: Some(8),
                ..Resolution::default()
            });
        assert_eq!(
            space_norm(&CoefficientSeries::monomial(10), &s),
            Err(Error::Aliasing { m: 8, degree: 10 })
        );
    }

    #[test]
    fn opnorm_examples() {
        let fam = TestFamily::mixed(&[2.0], vec![8, 16, 32], 3);
        let l2 = spec(SpaceFamily::LpSeq { s: 2.0, alpha: 0.0 });
        let est = opnorm_estimate(&CoefficientSeries::cauchy_kernel(64), &l2, &l2, &fam).unwrap();
        assert!((est.sup_ratio - 1.0).abs() < 1e-14);

        let hl = spec(SpaceFamily::HardyLorentz { p: 2.0, q: 1.0 });
        let bl = spec(SpaceFamily::Bloch);
        let const_only = TestFamily::new(vec![Generator::Constant], vec![4], 0);
        let est = opnorm_estimate(&CoefficientSeries::constant(1.0), &hl, &bl, &const_only).unwrap();
        // ‖1‖_B / ‖1‖_{2,1} = 1 / 2
        assert!((est.sup_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn opnorm_skips_zero_norm_members() {
        let fam = TestFamily::new(vec![Generator::Constant, Generator::Monomial], vec![4], 0);
        // Lipschitz seminorm of a constant vanishes
        let lip = spec(SpaceFamily::Lipschitz {
            alpha: 0.5,
            s: f64::INFINITY,
        });
        let l2 = spec(SpaceFamily::LpSeq { s: 2.0, alpha: 0.0 });
        let est = opnorm_estimate(&CoefficientSeries::cauchy_kernel(4), &lip, &l2, &fam).unwrap();
        assert_eq!(est.skipped, vec!["constant@4".to_string()]);
        assert_eq!(est.argmax_tag, "monomial");
    }

    #[test]
    fn pairing_examples() {
        let f = CoefficientSeries::from_real(&[1.0, 4.0, 7.0]).unwrap();
        assert_eq!(duality_pairing(&CoefficientSeries::cauchy_kernel(5), &f), Complex64::new(12.0, 0.0));
        assert_eq!(duality_pairing(&CoefficientSeries::monomial(2), &f), Complex64::new(7.0, 0.0));
        let g = CoefficientSeries::new(vec![Complex64::new(0.5, -1.0), Complex64::new(2.0, 3.0)]).unwrap();
        assert_eq!(duality_pairing(&g, &f), duality_pairing(&f, &g));
    }

    #[test]
    fn transform_examples() {
        let grid = frozen_w_grid();
        assert_eq!(grid.len(), 48);
        let e0 = CoefficientSeries::constant(1.0);
        assert!(analytic_transform(&e0, &grid)
            .unwrap()
            .iter()
            .all(|v| *v == Complex64::new(1.0, 0.0)));

        let n = 20;
        let ones = CoefficientSeries::cauchy_kernel(n);
        for (w, v) in grid.iter().zip(analytic_transform(&ones, &grid).unwrap()) {
            let expected = (Complex64::new(1.0, 0.0) - w.powu(n as u32 + 1)) / (Complex64::new(1.0, 0.0) - w);
            assert!((v - expected).norm() < 1e-12);
        }

        // tail of Σ (n+1) w^n beyond N is at most Σ_{n>N} (n+1) 0.9^n
        let n = 400;
        let lam = cauchy_power(2.0, n).unwrap();
        let tail: f64 = (n + 1..5000).map(|k| (k + 1) as f64 * 0.9f64.powi(k as i32)).sum();
        for (w, v) in grid.iter().zip(analytic_transform(&lam, &grid).unwrap()) {
            let exact = (Complex64::new(1.0, 0.0) - w).powi(-2);
            assert!((v - exact).norm() <= tail + 1e-10);
        }
        assert!(analytic_transform(&e0, &[Complex64::new(1.0, 0.0)]).is_err());
    }
}
