//! Deterministic families of test polynomials used to probe operator
//! quasinorms and embeddings.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::series::{cauchy_power, dilate_real, CoefficientSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Constant,
    /// `z^N`
    Monomial,
    /// `draws` polynomials of degree `N` with coefficients uniform in the square `[-1, 1]²`.
    Random {
        draws: usize,
    },
    /// `S_N (1 - z)^{-γ}`
    Cauchy(f64),
    /// `Σ_{2^k <= N} z^{2^k}`
    Lacunary,
    /// `(1 - z)^{-γ}` dilated by `r = 1 - 1/N`, truncated at degree
    /// `DILATION_SPAN · N` where the remaining tail is negligible.
    DilatedCauchy(f64),
}

impl Generator {
    fn tags(&self) -> Vec<String> {
        match self {
            Generator::Constant => vec!["constant".into()],
            Generator::Monomial => vec!["monomial".into()],
            Generator::Random { draws } => (0..*draws).map(|i| format!("random#{i}")).collect(),
            Generator::Cauchy(g) => vec![format!("cauchy({g})")],
            Generator::Lacunary => vec!["lacunary".into()],
            Generator::DilatedCauchy(g) => vec![format!("dilated_cauchy({g})")],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub tag: String,
    pub degree: usize,
    pub series: CoefficientSeries,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestFamily {
    pub generators: Vec<Generator>,
    pub degrees: Vec<usize>,
    pub seed: u64,
}

pub const DILATION_SPAN: usize = 32;

/// `g_r` for `g = (1 - z)^{-γ}` and `r = 1 - 1/n`.
pub fn dilated_cauchy(gamma: f64, n: usize) -> Result<CoefficientSeries> {
    let n = n.max(2);
    dilate_real(&cauchy_power(gamma, DILATION_SPAN * n)?, 1.0 - 1.0 / n as f64)
}

fn mix_seed(seed: u64, degree: usize, draw: usize) -> u64 {
    // splitmix64 finaliser over the packed inputs
    let mut z = seed ^ (degree as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (draw as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Degree-`n` polynomial with seeded coefficients uniform in `[-1, 1]²`.
pub fn random_polynomial(n: usize, seed: u64) -> CoefficientSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..=n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CoefficientSeries::new(coeffs).expect("uniform draws are finite")
}

impl TestFamily {
    pub fn new(generators: Vec<Generator>, degrees: Vec<usize>, seed: u64) -> Self {
        Self { generators, degrees, seed }
    }

    /// Random polynomials, Cauchy truncations at the given exponents, and
    /// lacunary series.
    pub fn mixed(cauchy_exponents: &[f64], degrees: Vec<usize>, seed: u64) -> Self {
        let mut generators = vec![
            Generator::Constant,
            Generator::Monomial,
            Generator::Random { draws: 3 },
            Generator::Lacunary,
        ];
        generators.extend(cauchy_exponents.iter().map(|&g| Generator::Cauchy(g)));
        Self { generators, degrees, seed }
    }

    pub fn generate(&self, generator: &Generator, degree: usize) -> Result<Vec<Member>> {
        let tags = generator.tags();
        let series: Vec<CoefficientSeries> = match *generator {
            Generator::Constant => vec![CoefficientSeries::constant(1.0)],
            Generator::Monomial => vec![CoefficientSeries::monomial(degree)],
            Generator::Random { draws } => (0..draws)
                .map(|i| random_polynomial(degree, mix_seed(self.seed, degree, i)))
                .collect(),
            Generator::Cauchy(g) => vec![cauchy_power(g, degree)?],
            Generator::Lacunary => vec![CoefficientSeries::lacunary(degree)],
            Generator::DilatedCauchy(g) => vec![dilated_cauchy(g, degree)?],
        };
        Ok(tags
            .into_iter()
            .zip(series)
            .map(|(tag, series)| Member { tag, degree, series })
            .collect())
    }

    /// All members ordered by degree, then generator.
    pub fn members(&self) -> Result<Vec<Member>> {
        let mut out = Vec::new();
        for &degree in &self.degrees {
            for g in &self.generators {
                out.extend(self.generate(g, degree)?);
            }
        }
        Ok(out)
    }
}
