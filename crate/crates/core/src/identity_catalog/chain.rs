//! Letters of the bilinear chain `x_σ x_{σ+1} − (m+σs) x_σ − (n+σs) x_{σ+1} = ϰ`.
//!
//! Letter `σ` is `d + K₁/(d + K₂/(d + …))` with `d = m + n + (2σ − 1)s` and
//! `K_j = j²s² − jms + jns ± ϰ`, where only `K₁` carries the sign choice.

use num_rational::BigRational;

use super::CatalogError;
use crate::cf_core::{ContinuedFraction, PartialTerm};
use crate::rational::{to_f64, Scalar};

/// Sign of `ϰ` in `K₁` for shifts 0, 1 and 2, as returned by
/// [`resolve_chain_kappa_signs`].
pub const CHAIN_KAPPA_SIGNS: [i8; 3] = [1, 1, 1];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainValue {
    pub value: f64,
    /// Every partial numerator and denominator up to the depth is positive.
    pub all_positive: bool,
}

fn sign_for(shift: usize) -> i8 {
    CHAIN_KAPPA_SIGNS.get(shift).copied().unwrap_or(1)
}

fn chain_term<T: Scalar>(m: &T, n: &T, s: &T, kappa: &T, sign: i8, shift: usize, j: usize) -> (T, T) {
    let c = |v: i64| T::from_i64(v);
    let jj = c(j as i64);
    let d = m.clone() + n.clone() + c(2 * shift as i64 - 1) * s.clone();
    let kappa = if j == 1 && sign < 0 { -kappa.clone() } else { kappa.clone() };
    let k = jj.clone() * jj.clone() * s.clone() * s.clone() - jj.clone() * m.clone() * s.clone()
        + jj * n.clone() * s.clone()
        + kappa;
    (k, d)
}

fn letter(m: f64, n: f64, s: f64, kappa: f64, sign: i8, shift: usize, depth: usize) -> Result<ChainValue, CatalogError> {
    let (_, d) = chain_term(&m, &n, &s, &kappa, sign, shift, 1);
    let mut all_positive = d > 0.0;
    let mut t = d;
    for j in (1..=depth).rev() {
        let (k, _) = chain_term(&m, &n, &s, &kappa, sign, shift, j);
        all_positive &= k > 0.0;
        if t == 0.0 {
            return Err(CatalogError::UndefinedConvergent { depth: j });
        }
        t = d + k / t;
    }
    Ok(ChainValue { value: t, all_positive })
}

/// Letter `shift` (α at 0, β at 1, γ at 2, …) evaluated backwards from
/// `depth` partial terms.
pub fn chain_alpha(m: f64, n: f64, s: f64, kappa: f64, shift: usize, depth: usize) -> Result<ChainValue, CatalogError> {
    letter(m, n, s, kappa, sign_for(shift), shift, depth)
}

/// Exact form of the letter's continued fraction (unbounded).
pub fn chain_fraction(m: &BigRational, n: &BigRational, s: &BigRational, kappa: &BigRational, shift: usize) -> ContinuedFraction {
    let sign = sign_for(shift);
    let (m, n, s, kappa) = (m.clone(), n.clone(), s.clone(), kappa.clone());
    let approx = [to_f64(&m), to_f64(&n), to_f64(&s), to_f64(&kappa)];
    let (_, lead) = chain_term(&m, &n, &s, &kappa, sign, shift, 1);
    ContinuedFraction::from_fn(lead, move |j| {
        let (k, d) = chain_term(&m, &n, &s, &kappa, sign, shift, j);
        Some(PartialTerm::new(k, d))
    })
    .with_float_terms(move |j| {
        let [m, n, s, kappa] = approx;
        Some(chain_term(&m, &n, &s, &kappa, sign, shift, j))
    })
}

/// Residuals of the relations linking letters 0–1 and 1–2.
fn residuals(m: f64, n: f64, s: f64, kappa: f64, signs: [i8; 3], depth: usize) -> Option<[f64; 2]> {
    let x: [f64; 3] = [0, 1, 2].map(|i| letter(m, n, s, kappa, signs[i], i, depth).map_or(f64::NAN, |v| v.value));
    let rel = |i: usize| {
        let si = i as f64 * s;
        (x[i] * x[i + 1] - (m + si) * x[i] - (n + si) * x[i + 1] - kappa).abs()
    };
    let r = [rel(0), rel(1)];
    r.iter().all(|v| v.is_finite()).then_some(r)
}

/// Picks, among all eight sign patterns for `K₁`, the one with the smallest
/// worst bilinear residual at a fixed reference point.
pub fn resolve_chain_kappa_signs() -> [i8; 3] {
    let (m, n, s, kappa) = (1.5, 2.25, 0.3, 0.8);
    let mut best = ([1i8; 3], f64::INFINITY);
    for bits in 0..8u8 {
        let signs = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { -1i8 } else { 1 });
        if let Some(r) = residuals(m, n, s, kappa, signs, 400) {
            let worst = r[0].max(r[1]);
            if worst < best.1 {
                best = (signs, worst);
            }
        }
    }
    best.0
}
