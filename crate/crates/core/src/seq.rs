//! Sequence spaces: weighted `ℓ^s`, dyadically blocked `ℓ(p,q,α)`, Cesàro
//! `ces(s)`, and the `q∗s` exponent calculus.
//!
//! Exponents are `f64` values in `(0, ∞]` with `f64::INFINITY` standing for ∞.

use num_complex::Complex64;
use num_rational::Ratio;

use crate::sum::compensated_sum;

/// Exponent arithmetic shared by the floating point and exact rational forms
/// of `q∗s`.
pub trait ExtendedExponent: Copy + PartialOrd {
    fn infinity() -> Self;
    fn is_infinite(&self) -> bool;
    /// `qs / (q - s)` for finite `q > s`.
    fn finite_star(q: Self, s: Self) -> Self;
}

impl ExtendedExponent for f64 {
    fn infinity() -> Self {
        f64::INFINITY
    }
    fn is_infinite(&self) -> bool {
        f64::is_infinite(*self)
    }
    fn finite_star(q: Self, s: Self) -> Self {
        q * s / (q - s)
    }
}

/// Exact extended rational exponent; `None` is ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalExponent(pub Option<Ratio<i64>>);

impl RationalExponent {
    pub fn finite(num: i64, den: i64) -> Self {
        Self(Some(Ratio::new(num, den)))
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        Some(match (self.0, other.0) {
            (None, None) => Equal,
            (None, Some(_)) => Greater,
            (Some(_), None) => Less,
            (Some(a), Some(b)) => a.cmp(&b),
        })
    }
}

impl ExtendedExponent for RationalExponent {
    fn infinity() -> Self {
        Self(None)
    }
    fn is_infinite(&self) -> bool {
        self.0.is_none()
    }
    fn finite_star(q: Self, s: Self) -> Self {
        let (q, s) = (q.0.expect("finite"), s.0.expect("finite"));
        Self(Some(q * s / (q - s)))
    }
}

/// `q∗s`: `s` if `q = ∞`, `∞` if `q <= s`, otherwise `qs/(q - s)`.
pub fn qstar<T: ExtendedExponent>(q: T, s: T) -> T {
    if q.is_infinite() {
        s
    } else if q <= s {
        T::infinity()
    } else {
        T::finite_star(q, s)
    }
}

/// Target exponents `(p∗r, q∗s, β - α)` of the multiplier space from
/// `ℓ(p,q,α)` into `ℓ(r,s,β)`.
pub fn kellogg_target_params(source: (f64, f64, f64), target: (f64, f64, f64)) -> (f64, f64, f64) {
    let (p, q, alpha) = source;
    let (r, s, beta) = target;
    (qstar(p, r), qstar(q, s), beta - alpha)
}

/// `w(0) = 1`, `w(n) = n^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    pub alpha: f64,
}

impl PowerWeight {
    pub const UNWEIGHTED: PowerWeight = PowerWeight { alpha: 0.0 };

    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }

    pub fn at(&self, n: usize) -> f64 {
        if n == 0 || self.alpha == 0.0 {
            1.0
        } else {
            (n as f64).powf(self.alpha)
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        x.iter().enumerate().map(|(n, v)| v * self.at(n)).collect()
    }
}

/// Dyadic block index: `0 ↦ 0`, `n ↦ ⌊log₂ n⌋ + 1`.
pub fn block_of(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (usize::BITS - n.leading_zeros()) as usize
    }
}

/// Index range of block `k`: `I_0 = {0}`, `I_k = [2^{k-1}, 2^k)`.
pub fn block_range(k: usize) -> std::ops::Range<usize> {
    if k == 0 {
        0..1
    } else {
        (1usize << (k - 1))..(1usize << k)
    }
}

/// A finite sequence together with its dyadic block decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockedSeq {
    entries: Vec<Complex64>,
}

impl BlockedSeq {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn from_real(xs: &[f64]) -> Self {
        Self {
            entries: xs.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn num_blocks(&self) -> usize {
        if self.entries.is_empty() {
            0
        } else {
            block_of(self.entries.len() - 1) + 1
        }
    }

    /// Entries of block `k`; a partially filled final block is truncated.
    pub fn block(&self, k: usize) -> &[Complex64] {
        let r = block_range(k);
        let end = r.end.min(self.entries.len());
        if r.start >= end {
            &[]
        } else {
            &self.entries[r.start..end]
        }
    }
}

fn lp_of_moduli<I: Iterator<Item = f64>>(moduli: I, p: f64) -> f64 {
    if p.is_infinite() {
        moduli.fold(0.0, f64::max)
    } else {
        compensated_sum(moduli.map(|x| x.powf(p))).powf(1.0 / p)
    }
}

/// `‖x‖_{ℓ(p,q,α)}`: weight entrywise, `ℓ^p` inside each dyadic block,
/// `ℓ^q` across blocks.
pub fn blocked_norm(x: &BlockedSeq, p: f64, q: f64, weight: PowerWeight) -> f64 {
    let inner = (0..x.num_blocks()).map(|k| {
        let start = block_range(k).start;
        lp_of_moduli(x.block(k).iter().enumerate().map(|(i, v)| v.norm() * weight.at(start + i)), p)
    });
    lp_of_moduli(inner, q)
}

/// `(Σ |w(n) x_n|^s)^{1/s}`, or the supremum for `s = ∞`.
pub fn lp_seq_norm(x: &[Complex64], s: f64, weight: PowerWeight) -> f64 {
    lp_of_moduli(x.iter().enumerate().map(|(n, v)| v.norm() * weight.at(n)), s)
}

/// Cesàro norm `(Σ_{n=1}^{L} ((1/n) Σ_{k=1}^{n} |x_k|)^s)^{1/s}`.
/// Index 0 of `x` does not enter.
pub fn ces_norm(x: &[Complex64], s: f64, length: usize) -> f64 {
    let mut running = 0.0;
    let terms = (1..=length).map(|n| {
        if n < x.len() {
            running += x[n].norm();
        }
        (running / n as f64).powf(s)
    });
    compensated_sum(terms.collect::<Vec<_>>()).powf(1.0 / s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, len: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        v[n] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn qstar_cases() {
        let inf = f64::INFINITY;
        assert_eq!(qstar(inf, 2.0), 2.0);
        assert_eq!(qstar(4.0, 2.0), 4.0);
        assert_eq!(qstar(2.0, 2.0), inf);
        assert_eq!(qstar(1.0, 3.0), inf);
        assert_eq!(qstar(inf, inf), inf);
    }

    #[test]
    fn kellogg_examples() {
        let inf = f64::INFINITY;
        assert_eq!(kellogg_target_params((1.0, 2.0, 0.0), (1.0, 2.0, 0.0)), (inf, inf, 0.0));
        assert_eq!(kellogg_target_params((inf, inf, 0.0), (2.0, 2.0, 1.0)), (2.0, 2.0, 1.0));
        assert_eq!(kellogg_target_params((4.0, 4.0, 1.0), (2.0, 2.0, 0.0)), (4.0, 4.0, -1.0));
    }

    #[test]
    fn blocks() {
        assert_eq!(block_of(0), 0);
        assert_eq!(block_of(1), 1);
        assert_eq!(block_of(2), 2);
        assert_eq!(block_of(3), 2);
        assert_eq!(block_of(4), 3);
        assert_eq!(block_of(1023), 10);
        assert_eq!(block_of(1024), 11);
        for n in 1..5000 {
            assert!(block_range(block_of(n)).contains(&n));
        }
    }

    #[test]
    fn blocked_examples() {
        let e4 = BlockedSeq::new(unit(4, 7));
        for alpha in [-1.0, 0.5, 2.0] {
            let v = blocked_norm(&e4, 1.5, 3.0, PowerWeight::new(alpha));
            assert!((v - 4f64.powf(alpha)).abs() < 1e-13);
        }
        let x = BlockedSeq::from_real(&[0.0, 0.0, 1.0, 1.0]);
        for q in [0.5, 1.0, f64::INFINITY] {
            assert!((blocked_norm(&x, 2.0, q, PowerWeight::UNWEIGHTED) - 2f64.sqrt()).abs() < 1e-14);
        }
        let e0 = BlockedSeq::from_real(&[-3.0, 0.0, 0.0]);
        assert_eq!(blocked_norm(&e0, 0.7, f64::INFINITY, PowerWeight::new(5.0)), 3.0);
    }

    #[test]
    fn lp_examples() {
        let e0 = [Complex64::new(2.5, 0.0)];
        for s in [0.5, 2.0, f64::INFINITY] {
            assert!((lp_seq_norm(&e0, s, PowerWeight::new(3.0)) - 2.5).abs() < 1e-14);
        }
        let ones = [Complex64::new(1.0, 0.0); 2];
        assert!((lp_seq_norm(&ones, 2.0, PowerWeight::UNWEIGHTED) - 2f64.sqrt()).abs() < 1e-15);
        let e5 = unit(5, 6);
        assert!((lp_seq_norm(&e5, 1.0, PowerWeight::new(0.5)) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ces_examples() {
        assert_eq!(ces_norm(&[Complex64::new(0.0, 0.0); 4], 2.0, 10), 0.0);
        let e1 = unit(1, 2);
        let expected = (1..=10).map(|n| 1.0 / (n * n) as f64).sum::<f64>().sqrt();
        assert!((ces_norm(&e1, 2.0, 10) - expected).abs() < 1e-14);
        // index 0 is ignored
        let mut x = unit(1, 3);
        x[0] = Complex64::new(100.0, 0.0);
        assert_eq!(ces_norm(&x, 2.0, 10), ces_norm(&e1, 2.0, 10));
        let y: Vec<Complex64> = x.iter().map(|v| v * 2.0).collect();
        assert!((ces_norm(&y, 3.0, 20) - 2.0 * ces_norm(&x, 3.0, 20)).abs() < 1e-14);
    }

    #[test]
    fn weight_composition_is_exact_for_integer_powers() {
        for n in 0..2000usize {
            let a = PowerWeight::new(2.0).at(n) * PowerWeight::new(1.0).at(n);
            assert_eq!(a, PowerWeight::new(3.0).at(n));
        }
    }
}
