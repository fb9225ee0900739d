//! Alternating series `n₀/d₀ − n₁/d₁ + n₂/d₂ − …` turned into continued
//! fractions, and the summation lemma `1 + p/(q+s) + p(p+s)/((q+s)(q+2s)) + … = q/(q−p)`.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cf_core::{ContinuedFraction, PartialTerm};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SeriesError {
    #[error("a series needs at least two terms")]
    TooShort,
    #[error("numerator and denominator lists differ in length ({numerators} vs {denominators})")]
    LengthMismatch { numerators: usize, denominators: usize },
    #[error("series denominator {index} is zero")]
    ZeroDenominator { index: usize },
    #[error("series numerator {index} is zero")]
    ZeroNumerator { index: usize },
    #[error("zero pivot: conversion stops after {depth} terms")]
    ZeroPivot { depth: usize, partial: ContinuedFraction },
    #[error("summation lemma needs q > p > 0 and s > 0")]
    InvalidLemmaParams,
}

/// `Σ (−1)ʲ nⱼ/dⱼ`, finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    numerators: Vec<BigRational>,
    denominators: Vec<BigRational>,
}

impl SeriesSpec {
    /// Zero numerators are rejected as well as zero denominators: the
    /// conversion divides by every term.
    pub fn new(numerators: Vec<BigRational>, denominators: Vec<BigRational>) -> Result<Self, SeriesError> {
        if numerators.len() != denominators.len() {
            return Err(SeriesError::LengthMismatch { numerators: numerators.len(), denominators: denominators.len() });
        }
        if numerators.len() < 2 {
            return Err(SeriesError::TooShort);
        }
        if let Some(index) = denominators.iter().position(Zero::is_zero) {
            return Err(SeriesError::ZeroDenominator { index });
        }
        if let Some(index) = numerators.iter().position(Zero::is_zero) {
            return Err(SeriesError::ZeroNumerator { index });
        }
        Ok(SeriesSpec { numerators, denominators })
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[BigRational] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[BigRational] {
        &self.denominators
    }

    /// Partial sums `S₀ = 0, S₁ = n₀/d₀, …`.
    pub fn partial_sums(&self) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(acc.clone());
        for (j, (n, d)) in self.numerators.iter().zip(&self.denominators).enumerate() {
            let t = n / d;
            if j % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
            out.push(acc.clone());
        }
        out
    }
}

/// Cleared-denominator continued fraction whose convergent `k` equals the
/// `k`-th partial sum:
///
/// `n₀/(d₀ + n₁d₀²/(n₀d₁ − n₁d₀ + n₀n₂d₁²/(n₁d₂ − n₂d₁ + …)))`.
///
/// At most `depth` terms are produced (fewer if the series is shorter). A
/// zero pivot `nₖ₋₁dₖ − nₖdₖ₋₁` ends the conversion with the terms built so far.
pub fn series_to_cf(series: &SeriesSpec, depth: usize) -> Result<ContinuedFraction, SeriesError> {
    let (n, d) = (&series.numerators, &series.denominators);
    let depth = depth.min(series.len());
    let mut terms = Vec::with_capacity(depth);
    for k in 0..depth {
        let term = if k == 0 {
            PartialTerm::new(n[0].clone(), d[0].clone())
        } else {
            let pivot = &n[k - 1] * &d[k] - &n[k] * &d[k - 1];
            if pivot.is_zero() {
                let partial = ContinuedFraction::finite(BigRational::zero(), terms);
                return Err(SeriesError::ZeroPivot { depth: k, partial });
            }
            let carry = if k == 1 { BigRational::from_integer(1.into()) } else { n[k - 2].clone() };
            let numerator = carry * &n[k] * &d[k - 1] * &d[k - 1];
            PartialTerm::new(numerator, pivot)
        };
        terms.push(term);
    }
    Ok(ContinuedFraction::finite(BigRational::zero(), terms))
}

/// Parameters of the summation lemma, `q > p > 0`, `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussLemmaParams {
    pub p: f64,
    pub q: f64,
    pub s: f64,
}

impl GaussLemmaParams {
    pub fn new(p: f64, q: f64, s: f64) -> Result<Self, SeriesError> {
        if p > 0.0 && q > p && s > 0.0 && q.is_finite() && s.is_finite() {
            Ok(GaussLemmaParams { p, q, s })
        } else {
            Err(SeriesError::InvalidLemmaParams)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSum {
    pub partial_sum: f64,
    pub closed_form: f64,
    /// Exact tail `closed_form − partial_sum = t_N (q + Ns)/(q − p)`, where
    /// `t_N` is the first omitted term.
    pub tail: f64,
}

/// Sums the first `n_terms` terms of `1 + p/(q+s) + p(p+s)/((q+s)(q+2s)) + …`.
pub fn gauss_sum_check(params: GaussLemmaParams, n_terms: usize) -> GaussSum {
    let GaussLemmaParams { p, q, s } = params;
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for j in 0..n_terms {
        let y = term - compensation;
        let t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        let j = j as f64;
        term *= (p + j * s) / (q + (j + 1.0) * s);
    }
    let n = n_terms as f64;
    GaussSum { partial_sum: sum, closed_form: q / (q - p), tail: term * (q + n * s) / (q - p) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf_core::convergent_sequence;
    use crate::rational::{int, ratio};

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn first_pivot_by_hand() {
        let s = SeriesSpec::new(ints(&[2, 1]), ints(&[1, 3])).unwrap();
        let cf = series_to_cf(&s, 2).unwrap();
        let t = cf.prefix(2);
        assert_eq!(t[0], PartialTerm::from_ints(2, 1));
        assert_eq!(t[1], PartialTerm::from_ints(1, 5));
    }

    #[test]
    fn zero_pivot_returns_partial() {
        // 1/1 − 2/2: pivot n₀d₁ − n₁d₀ = 0.
        let s = SeriesSpec::new(ints(&[1, 2, 1]), ints(&[1, 2, 3])).unwrap();
        match series_to_cf(&s, 3) {
            Err(SeriesError::ZeroPivot { depth, partial }) => {
                assert_eq!(depth, 1);
                assert_eq!(partial.prefix(5), alloc::vec![PartialTerm::from_ints(1, 1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(SeriesSpec::new(ints(&[1]), ints(&[1])), Err(SeriesError::TooShort)));
        assert!(matches!(SeriesSpec::new(ints(&[1, 1]), ints(&[1])), Err(SeriesError::LengthMismatch { .. })));
        assert!(matches!(SeriesSpec::new(ints(&[1, 1]), ints(&[1, 0])), Err(SeriesError::ZeroDenominator { index: 1 })));
        assert!(matches!(SeriesSpec::new(ints(&[1, 0]), ints(&[1, 2])), Err(SeriesError::ZeroNumerator { index: 1 })));
    }

    #[test]
    fn convergents_are_partial_sums() {
        let s = SeriesSpec::new(
            alloc::vec![ratio(3, 2), int(-2), ratio(5, 7), int(4), ratio(-1, 3)],
            alloc::vec![int(1), ratio(1, 3), int(5), int(-2), int(9)],
        )
        .unwrap();
        let cf = series_to_cf(&s, 10).unwrap();
        let values: Vec<_> = convergent_sequence(&cf, 10).iter().map(|c| c.value().unwrap()).collect();
        assert_eq!(values, s.partial_sums());
    }

    #[test]
    fn lemma_tail_closes_the_gap() {
        for (p, q, s) in [(1.0, 2.0, 1.0), (1.0, 3.0, 2.0), (0.3, 2.5, 0.7)] {
            let g = gauss_sum_check(GaussLemmaParams::new(p, q, s).unwrap(), 2000);
            assert!((g.partial_sum + g.tail - g.closed_form).abs() < 1e-12, "{p} {q} {s}");
        }
        let g = gauss_sum_check(GaussLemmaParams::new(1.0, 2.0, 1.0).unwrap(), 2000);
        assert!((g.tail - 2.0 / 2001.0).abs() < 1e-15);
    }

    #[test]
    fn lemma_small_p_limit() {
        let g = gauss_sum_check(GaussLemmaParams::new(1e-12, 1.0, 1.0).unwrap(), 50);
        assert!((g.partial_sum - 1.0).abs() < 1e-11);
        assert!((g.closed_form - 1.0).abs() < 1e-11);
    }

    #[test]
    fn lemma_rejects_q_not_above_p() {
        assert!(GaussLemmaParams::new(2.0, 2.0, 1.0).is_err());
        assert!(GaussLemmaParams::new(1.0, 2.0, 0.0).is_err());
    }
}
