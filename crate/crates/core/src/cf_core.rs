//! Continued fractions `A + b₁/(a₁ + b₂/(a₂ + …))`.
//!
//! `bₖ` is the partial numerator and `aₖ` the partial denominator of term
//! `k ≥ 1`; the leading term `A` is stored separately. Exact work happens on
//! [`BigRational`]; [`eval_float`] runs the same recurrence in `f64`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, to_f64};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error("equivalence scale {index} is zero")]
    ZeroScale { index: usize },
    #[error("even contraction undefined at term {index}: zero partial denominator {source_index} in the original fraction")]
    UndefinedContraction { index: usize, source_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTerm {
    pub numerator: BigRational,
    pub denominator: BigRational,
}

impl PartialTerm {
    pub fn new(numerator: BigRational, denominator: BigRational) -> Self {
        PartialTerm { numerator, denominator }
    }

    pub fn from_ints(numerator: i64, denominator: i64) -> Self {
        PartialTerm::new(crate::rational::int(numerator), crate::rational::int(denominator))
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive() && self.denominator.is_positive()
    }
}

type ExactTerms = dyn Fn(usize) -> Option<PartialTerm> + Send + Sync;
type FloatTerms = dyn Fn(usize) -> Option<(f64, f64)> + Send + Sync;

/// A continued fraction with a lazily generated tail.
///
/// Generators are pure functions of the 1-based term index, so asking for
/// the same prefix twice gives identical terms. Returning `None` ends the
/// fraction; a generator must keep returning `None` from then on.
#[derive(Clone)]
pub struct ContinuedFraction {
    leading: BigRational,
    exact: Arc<ExactTerms>,
    float: Option<Arc<FloatTerms>>,
}

impl ContinuedFraction {
    pub fn from_fn<F>(leading: BigRational, terms: F) -> Self
    where
        F: Fn(usize) -> Option<PartialTerm> + Send + Sync + 'static,
    {
        ContinuedFraction { leading, exact: Arc::new(terms), float: None }
    }

    pub fn finite(leading: BigRational, terms: Vec<PartialTerm>) -> Self {
        let terms = Arc::new(terms);
        Self::from_fn(leading, move |k| k.checked_sub(1).and_then(|i| terms.get(i).cloned()))
    }

    /// Attaches a floating-point twin of the term generator, used by
    /// [`eval_float`] to skip rational arithmetic on long runs. It must agree
    /// with the exact generator up to rounding.
    pub fn with_float_terms<F>(mut self, terms: F) -> Self
    where
        F: Fn(usize) -> Option<(f64, f64)> + Send + Sync + 'static,
    {
        self.float = Some(Arc::new(terms));
        self
    }

    pub fn leading(&self) -> &BigRational {
        &self.leading
    }

    /// Term `k` (1-based), or `None` past the end of a finite fraction.
    pub fn term(&self, k: usize) -> Option<PartialTerm> {
        if k == 0 {
            return None;
        }
        (self.exact)(k)
    }

    /// Term `k` as `(numerator, denominator)` floats.
    pub fn float_term(&self, k: usize) -> Option<(f64, f64)> {
        if k == 0 {
            return None;
        }
        match &self.float {
            Some(f) => f(k),
            None => self.term(k).map(|t| (to_f64(&t.numerator), to_f64(&t.denominator))),
        }
    }

    /// Up to `k` leading terms.
    pub fn prefix(&self, k: usize) -> Vec<PartialTerm> {
        (1..=k).map_while(|i| self.term(i)).collect()
    }

    /// The first `depth` terms, generated lazily.
    pub fn truncated(&self, depth: usize) -> Self {
        let exact = Arc::clone(&self.exact);
        let float = self.float.clone();
        ContinuedFraction {
            leading: self.leading.clone(),
            exact: Arc::new(move |k| if k <= depth { exact(k) } else { None }),
            float: float.map(|f| Arc::new(move |k| if k <= depth { f(k) } else { None }) as Arc<FloatTerms>),
        }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.leading))?;
        let shown = self.prefix(5);
        for t in &shown {
            write!(f, " + {}/({}", format_rational(&t.numerator), format_rational(&t.denominator))?;
        }
        if self.term(shown.len() + 1).is_some() {
            write!(f, " + …")?;
        }
        for _ in &shown {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Continuants `p/q` of the truncation after `index` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigRational,
    pub q: BigRational,
}

impl Convergent {
    /// `None` when `q = 0` (the convergent is undefined).
    pub fn value(&self) -> Option<BigRational> {
        (!self.q.is_zero()).then(|| &self.p / &self.q)
    }
}

/// Convergents `0..=k` from the recurrences `pₖ = aₖpₖ₋₁ + bₖpₖ₋₂`,
/// `qₖ = aₖqₖ₋₁ + bₖqₖ₋₂`. Stops early if the fraction is finite.
pub fn convergent_sequence(cf: &ContinuedFraction, k: usize) -> Vec<Convergent> {
    let mut out = Vec::with_capacity(k + 1);
    let (mut p_prev, mut q_prev) = (BigRational::one(), BigRational::zero());
    let (mut p, mut q) = (cf.leading.clone(), BigRational::one());
    out.push(Convergent { index: 0, p: p.clone(), q: q.clone() });
    for i in 1..=k {
        let Some(t) = cf.term(i) else { break };
        let p_next = &t.denominator * &p + &t.numerator * &p_prev;
        let q_next = &t.denominator * &q + &t.numerator * &q_prev;
        p_prev = core::mem::replace(&mut p, p_next);
        q_prev = core::mem::replace(&mut q, q_next);
        out.push(Convergent { index: i, p: p.clone(), q: q.clone() });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalStatus {
    Converged,
    BudgetExhausted,
    DivergentFlagged,
    TerminatedFinite,
}

impl EvalStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalStatus::Converged => "converged",
            EvalStatus::BudgetExhausted => "budget-exhausted",
            EvalStatus::DivergentFlagged => "divergent-flagged",
            EvalStatus::TerminatedFinite => "terminated-finite",
        }
    }
}

impl fmt::Display for EvalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: f64,
    /// Present only while every term seen so far is positive.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub terms_used: usize,
    pub status: EvalStatus,
}

impl EvalReport {
    pub fn bracket(&self) -> Option<(f64, f64)> {
        self.lower.zip(self.upper)
    }

    pub fn width(&self) -> Option<f64> {
        self.bracket().map(|(lo, hi)| hi - lo)
    }
}

const RESCALE_HIGH: f64 = 1.340_780_792_994_259_7e154; // 2^512
const RESCALE_LOW: f64 = 7.458_340_731_200_207e-155; // 2^-512
/// Consecutive non-contracting oscillations before a signed fraction is
/// flagged divergent.
const DIVERGENCE_WINDOW: usize = 32;

/// Evaluates `cf` in floating point.
///
/// While all terms are positive consecutive convergents bracket the limit,
/// so the loop stops once the bracket is narrower than `tol` and reports
/// its midpoint. Without that certificate it stops after two successive
/// convergent changes of at most `tol` and reports no bracket. A zero
/// partial numerator cuts the fraction off, which ends evaluation exactly.
pub fn eval_float(cf: &ContinuedFraction, tol: f64, max_terms: usize) -> Result<EvalReport, CfError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CfError::InvalidTolerance);
    }
    let lead = to_f64(&cf.leading);
    let (mut p_prev, mut q_prev, mut p, mut q) = (1.0f64, 0.0f64, lead, 1.0f64);
    let mut positive = true;
    let mut prev: Option<f64> = Some(lead);
    let mut current = lead;
    let mut bracket: Option<(f64, f64)> = None;
    let mut quiet_steps = 0usize;
    let mut gaps = [f64::NAN; 2];
    let mut last_sign = 0.0f64;
    let mut stalled = 0usize;

    let finish = |value: f64, bracket: Option<(f64, f64)>, terms_used, status| {
        let (lower, upper) = bracket.map_or((None, None), |(lo, hi)| (Some(lo), Some(hi)));
        let value = match bracket {
            Some((lo, hi)) if status != EvalStatus::TerminatedFinite => 0.5 * (lo + hi),
            _ => value,
        };
        Ok(EvalReport { value, lower, upper, terms_used, status })
    };

    for k in 1..=max_terms {
        let Some((b, a)) = cf.float_term(k) else {
            return finish(current, bracket.map(|_| (current, current)), k - 1, EvalStatus::TerminatedFinite);
        };
        if b == 0.0 {
            return finish(current, bracket.map(|_| (current, current)), k, EvalStatus::TerminatedFinite);
        }
        positive &= b > 0.0 && a > 0.0;
        if !positive {
            bracket = None;
        }
        let p_next = a * p + b * p_prev;
        let q_next = a * q + b * q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        let scale = p.abs().max(q.abs()).max(p_prev.abs()).max(q_prev.abs());
        if scale > RESCALE_HIGH {
            p *= RESCALE_LOW;
            q *= RESCALE_LOW;
            p_prev *= RESCALE_LOW;
            q_prev *= RESCALE_LOW;
        } else if scale > 0.0 && scale < RESCALE_LOW {
            p *= RESCALE_HIGH;
            q *= RESCALE_HIGH;
            p_prev *= RESCALE_HIGH;
            q_prev *= RESCALE_HIGH;
        }
        if q == 0.0 {
            continue;
        }
        let v = p / q;
        if !v.is_finite() {
            continue;
        }
        current = v;
        let Some(before) = prev.replace(v) else { continue };
        if positive {
            let (lo, hi) = if before <= v { (before, v) } else { (v, before) };
            bracket = Some((lo, hi));
            if hi - lo <= tol {
                return finish(v, bracket, k, EvalStatus::Converged);
            }
            continue;
        }
        let diff = v - before;
        if diff.abs() <= tol {
            quiet_steps += 1;
            if quiet_steps >= 2 {
                return finish(v, None, k, EvalStatus::Converged);
            }
        } else {
            quiet_steps = 0;
        }
        let gap = diff.abs();
        let sign = diff.signum();
        if sign == -last_sign && gap >= gaps[0] {
            stalled += 1;
            if stalled >= DIVERGENCE_WINDOW {
                return finish(v, None, k, EvalStatus::DivergentFlagged);
            }
        } else {
            stalled = 0;
        }
        last_sign = sign;
        gaps = [gaps[1], gap];
    }
    finish(current, bracket, max_terms, EvalStatus::BudgetExhausted)
}

/// Euler's series `A + b₁/(q₀q₁) − b₁b₂/(q₁q₂) + …` for a continued fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesExpansion {
    pub leading: BigRational,
    /// Terms `1..` in order; their partial sums are the convergents.
    pub terms: Vec<BigRational>,
    /// Index of the first term that could not be formed because a
    /// denominator continuant vanished.
    pub undefined_at: Option<usize>,
}

impl SeriesExpansion {
    /// `leading + terms[0] + … + terms[j-1]` for `j = 0..=terms.len()`.
    pub fn partial_sums(&self) -> Vec<BigRational> {
        let mut acc = self.leading.clone();
        let mut out = Vec::with_capacity(self.terms.len() + 1);
        out.push(acc.clone());
        for t in &self.terms {
            acc += t;
            out.push(acc.clone());
        }
        out
    }
}

/// The first `k` terms of the series whose partial sums are the convergents:
/// `termⱼ = (−1)^{j+1} (b₁⋯bⱼ) / (qⱼ₋₁ qⱼ)`.
pub fn euler_series_expansion(cf: &ContinuedFraction, k: usize) -> SeriesExpansion {
    let convergents = convergent_sequence(cf, k);
    let mut terms = Vec::with_capacity(k);
    let mut product = BigRational::one();
    let mut undefined_at = None;
    for j in 1..convergents.len() {
        let t = cf.term(j).expect("convergent exists, so does its term");
        product *= &t.numerator;
        let denom = &convergents[j - 1].q * &convergents[j].q;
        if denom.is_zero() {
            undefined_at = Some(j);
            break;
        }
        let term = &product / denom;
        terms.push(if j % 2 == 1 { term } else { -term });
    }
    SeriesExpansion { leading: cf.leading.clone(), terms, undefined_at }
}

/// The even part of `cf`, truncated to `depth` terms: convergent `k` of the
/// result equals convergent `2k` of `cf`.
///
/// Finite inputs are padded with `0/1` terms, so the contraction of a finite
/// fraction reproduces its value.
pub fn even_contraction(cf: &ContinuedFraction, depth: usize) -> Result<ContinuedFraction, CfError> {
    let padded = |k: usize| cf.term(k).unwrap_or_else(|| PartialTerm::from_ints(0, 1));
    let source_len = cf.prefix(2 * depth).len();
    let depth = depth.min(source_len.div_ceil(2));
    let mut out = Vec::with_capacity(depth);
    for k in 1..=depth {
        let t_even = padded(2 * k);
        let t_odd = padded(2 * k - 1);
        if k == 1 {
            let numerator = &t_odd.numerator * &t_even.denominator;
            let denominator = &t_even.numerator + &t_odd.denominator * &t_even.denominator;
            out.push(PartialTerm::new(numerator, denominator));
            continue;
        }
        let t_back = padded(2 * k - 2);
        if t_back.denominator.is_zero() {
            return Err(CfError::UndefinedContraction { index: k, source_index: 2 * k - 2 });
        }
        let ratio = &t_even.denominator / &t_back.denominator;
        let numerator = -(&t_back.numerator * &t_odd.numerator * &ratio);
        let denominator =
            &t_even.numerator + &t_odd.denominator * &t_even.denominator + &t_odd.numerator * &ratio;
        out.push(PartialTerm::new(numerator, denominator));
    }
    Ok(ContinuedFraction::finite(cf.leading.clone(), out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityClass {
    GuaranteedConvergent,
    NotGuaranteed,
}

/// Whether the first `k` partial numerators and denominators are all positive.
pub fn positivity_class(cf: &ContinuedFraction, k: usize) -> PositivityClass {
    if (1..=k).map_while(|i| cf.term(i)).all(|t| t.is_positive()) {
        PositivityClass::GuaranteedConvergent
    } else {
        PositivityClass::NotGuaranteed
    }
}

/// Rescales terms by `c₁, c₂, …` (`c₀ = 1`, and 1 past the end of `scales`):
/// `b′ₖ = cₖ₋₁cₖbₖ`, `a′ₖ = cₖaₖ`. Convergent values are unchanged.
pub fn equivalence_transform(cf: &ContinuedFraction, scales: &[BigRational]) -> Result<ContinuedFraction, CfError> {
    if let Some(i) = scales.iter().position(Zero::is_zero) {
        return Err(CfError::ZeroScale { index: i + 1 });
    }
    let scales: Arc<Vec<BigRational>> = Arc::new(scales.to_vec());
    let source = cf.clone();
    let scale = move |s: &[BigRational], k: usize| -> BigRational {
        if k == 0 {
            BigRational::one()
        } else {
            s.get(k - 1).cloned().unwrap_or_else(BigRational::one)
        }
    };
    Ok(ContinuedFraction::from_fn(cf.leading.clone(), move |k| {
        let t = source.term(k)?;
        let ck = scale(&scales, k);
        let numerator = scale(&scales, k - 1) * &ck * t.numerator;
        Some(PartialTerm::new(numerator, ck * t.denominator))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn brouncker() -> ContinuedFraction {
        ContinuedFraction::from_fn(int(0), |k| {
            let odd = 2 * k as i64 - 3;
            Some(if k == 1 { PartialTerm::from_ints(1, 1) } else { PartialTerm::from_ints(odd * odd, 2) })
        })
    }

    #[test]
    fn debug_shows_prefix() {
        let cf = ContinuedFraction::finite(int(0), alloc::vec![PartialTerm::from_ints(1, 2), PartialTerm::from_ints(3, 4)]);
        assert_eq!(alloc::format!("{cf:?}"), "0 + 1/(2 + 3/(4))");
        assert!(alloc::format!("{:?}", brouncker()).ends_with("+ …)))))"));
    }

    #[test]
    fn finite_fraction_ends() {
        let cf = ContinuedFraction::finite(int(0), alloc::vec![PartialTerm::from_ints(1, 2), PartialTerm::from_ints(3, 4)]);
        let cs = convergent_sequence(&cf, 10);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2].value().unwrap(), ratio(4, 11));
        let r = eval_float(&cf, 1e-12, 100).unwrap();
        assert_eq!(r.status, EvalStatus::TerminatedFinite);
        assert_eq!(r.value, 4.0 / 11.0);
        assert_eq!(r.terms_used, 2);
    }

    #[test]
    fn undefined_convergent_is_skipped() {
        // 0 + 1/(1 + (-1)/(1 + 1/(1 + ...))) has q₂ = 0.
        let cf = ContinuedFraction::finite(
            int(0),
            alloc::vec![PartialTerm::from_ints(1, 1), PartialTerm::from_ints(-1, 1), PartialTerm::from_ints(1, 1)],
        );
        let cs = convergent_sequence(&cf, 3);
        assert!(cs[2].value().is_none());
        assert_eq!(cs[3].value().unwrap(), int(2));
        let s = euler_series_expansion(&cf, 3);
        assert_eq!(s.undefined_at, Some(2));
        assert_eq!(s.terms, alloc::vec![int(1)]);
        let r = eval_float(&cf, 1e-9, 10).unwrap();
        assert_eq!(r.value, 2.0);
    }

    #[test]
    fn truncation_keeps_float_twin() {
        let cf = brouncker().with_float_terms(|k| Some(if k == 1 { (1.0, 1.0) } else { (((2 * k - 3) as f64).powi(2), 2.0) }));
        let t = cf.truncated(3);
        assert_eq!(t.float_term(3), Some((9.0, 2.0)));
        assert_eq!(t.float_term(4), None);
        assert_eq!(t.prefix(10).len(), 3);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert_eq!(eval_float(&brouncker(), 0.0, 10), Err(CfError::InvalidTolerance));
        assert_eq!(eval_float(&brouncker(), f64::NAN, 10), Err(CfError::InvalidTolerance));
    }

    #[test]
    fn budget_exhaustion_keeps_bracket() {
        let r = eval_float(&brouncker(), 1e-12, 50).unwrap();
        assert_eq!(r.status, EvalStatus::BudgetExhausted);
        let (lo, hi) = r.bracket().unwrap();
        assert!(lo < core::f64::consts::FRAC_PI_4 && core::f64::consts::FRAC_PI_4 < hi);
        assert!(lo <= r.value && r.value <= hi);
    }

    #[test]
    fn signed_divergence_is_flagged() {
        // Binomial-weight fraction with weight exponent 3: the partial
        // denominators turn negative and the convergents swing outwards.
        let cf = ContinuedFraction::from_fn(int(0), |k| {
            let j = k as i64 - 2;
            Some(match k {
                1 => PartialTerm::from_ints(1, 1),
                2 => PartialTerm::from_ints(3, -1),
                _ => PartialTerm::from_ints(j * (3 + j) * (j + 1) * (j + 1), -j - 1),
            })
        });
        let r = eval_float(&cf, 1e-8, 100_000).unwrap();
        assert_eq!(r.status, EvalStatus::DivergentFlagged);
        assert!(r.terms_used < 1000);
        assert!(r.bracket().is_none());
    }

    #[test]
    fn renormalisation_survives_huge_continuants() {
        // Terms grow like k², continuants like (k!)², far past f64 range.
        let cf = ContinuedFraction::from_fn(int(2), |k| Some(PartialTerm::from_ints((k as i64 + 1).pow(2), 1)));
        let r = eval_float(&cf, 1e-300, 3000).unwrap();
        assert!(r.value.is_finite());
        assert!(r.bracket().is_some());
    }

    #[test]
    fn zero_scale_rejected() {
        let err = equivalence_transform(&brouncker(), &[int(1), int(0)]).unwrap_err();
        assert_eq!(err, CfError::ZeroScale { index: 2 });
    }

    #[test]
    fn contraction_of_short_fraction_pads() {
        let cf = ContinuedFraction::finite(int(1), alloc::vec![PartialTerm::from_ints(2, 3), PartialTerm::from_ints(5, 7), PartialTerm::from_ints(1, 2)]);
        let even = even_contraction(&cf, 10).unwrap();
        assert_eq!(even.prefix(10).len(), 2);
        let want = convergent_sequence(&cf, 3)[3].value().unwrap();
        assert_eq!(convergent_sequence(&even, 2)[2].value().unwrap(), want);
    }

    #[test]
    fn contraction_reports_zero_denominator() {
        let cf = ContinuedFraction::finite(
            int(0),
            alloc::vec![PartialTerm::from_ints(1, 1), PartialTerm::from_ints(1, 0), PartialTerm::from_ints(1, 1), PartialTerm::from_ints(1, 1)],
        );
        assert_eq!(even_contraction(&cf, 2).unwrap_err(), CfError::UndefinedContraction { index: 2, source_index: 2 });
    }
}
