use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::constraints::check;
use super::references::{reference_values, References};
use super::rules::build;
use super::{CatalogError, Family, Params, QUADRATURE_TARGET};
use crate::cf_core::{eval_float, EvalReport, EvalStatus};
use crate::rational::parse_rational;

/// One verification request.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCase {
    pub family: Family,
    pub params: Params,
    pub tolerance: f64,
    pub max_terms: usize,
}

impl IdentityCase {
    pub fn new(family: Family, params: Params, tolerance: f64, max_terms: usize) -> Result<Self, CatalogError> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(CatalogError::InvalidTolerance);
        }
        if max_terms == 0 {
            return Err(CatalogError::InvalidBudget);
        }
        Ok(IdentityCase { family, params, tolerance, max_terms })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyStatus {
    Pass,
    Fail,
    Divergent,
    ConstraintViolation,
    /// The reference could not be computed or the fraction has no value.
    Undefined,
}

impl VerifyStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerifyStatus::Pass => "pass",
            VerifyStatus::Fail => "fail",
            VerifyStatus::Divergent => "divergent",
            VerifyStatus::ConstraintViolation => "constraint-violation",
            VerifyStatus::Undefined => "undefined",
        }
    }
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub case: IdentityCase,
    /// Absent when evaluation never started.
    pub eval: Option<EvalReport>,
    pub references: Option<References>,
    /// `|value − primary reference|`.
    pub abs_error: Option<f64>,
    pub status: VerifyStatus,
    /// Human-readable reason for any non-pass status.
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }
}

/// Bracket endpoints are widened by this relative amount, ten times the
/// accuracy of the quadrature references.
const BRACKET_SLACK: f64 = 10.0 * QUADRATURE_TARGET;
/// Fractions without a bracket certificate pass at ten times the case tolerance.
const SIGNED_FACTOR: f64 = 10.0;

/// Evaluates the case's fraction and compares it with its reference values.
pub fn verify(case: IdentityCase) -> VerificationReport {
    let mut report =
        VerificationReport { case, eval: None, references: None, abs_error: None, status: VerifyStatus::Undefined, detail: None };
    let settle = |mut report: VerificationReport, status, detail: Option<String>| {
        report.status = status;
        report.detail = detail;
        report
    };

    let case = &report.case;
    if !(case.tolerance > 0.0 && case.tolerance.is_finite()) || case.max_terms == 0 {
        let err = if case.max_terms == 0 { CatalogError::InvalidBudget } else { CatalogError::InvalidTolerance };
        return settle(report, VerifyStatus::ConstraintViolation, Some(err.to_string()));
    }
    let values = match case.family.resolve(&case.params).and_then(|v| check(case.family, &v).map(|_| v)) {
        Ok(v) => v,
        Err(e) => return settle(report, VerifyStatus::ConstraintViolation, Some(e.to_string())),
    };
    let cf = build(case.family, &values);
    let eval = match eval_float(&cf, case.tolerance, case.max_terms) {
        Ok(e) => e,
        Err(e) => return settle(report, VerifyStatus::ConstraintViolation, Some(e.to_string())),
    };
    let known_divergent = case.family.known_divergent(&case.params);
    let tolerance = case.tolerance;
    report.eval = Some(eval.clone());

    if known_divergent || eval.status == EvalStatus::DivergentFlagged {
        let why = if known_divergent { "outside the convergence region" } else { "convergents oscillate without contracting" };
        return settle(report, VerifyStatus::Divergent, Some(why.to_string()));
    }
    let refs = match reference_values(report.case.family, &report.case.params) {
        Ok(r) => r,
        Err(e) => return settle(report, VerifyStatus::Undefined, Some(e.to_string())),
    };
    report.references = Some(refs);
    report.abs_error = Some((eval.value - refs.primary).abs());
    let scale = refs.primary.abs().max(1.0);

    if refs.disagreement() > BRACKET_SLACK * scale {
        let detail = alloc::format!("references disagree by {:e}", refs.disagreement());
        return settle(report, VerifyStatus::Fail, Some(detail));
    }
    if !eval.value.is_finite() {
        return settle(report, VerifyStatus::Undefined, Some("fraction value is not finite".to_string()));
    }
    if !matches!(eval.status, EvalStatus::Converged | EvalStatus::TerminatedFinite) {
        let detail = alloc::format!("{} after {} terms", eval.status, eval.terms_used);
        return settle(report, VerifyStatus::Fail, Some(detail));
    }
    let candidates = [Some(refs.primary), refs.secondary];
    let ok = match eval.bracket() {
        Some((lo, hi)) => {
            let slack = BRACKET_SLACK * scale;
            candidates.iter().flatten().all(|&r| lo - slack <= r && r <= hi + slack)
        }
        None => candidates.iter().flatten().all(|&r| (eval.value - r).abs() <= SIGNED_FACTOR * tolerance),
    };
    if ok {
        settle(report, VerifyStatus::Pass, None)
    } else {
        let detail = match eval.bracket() {
            Some((lo, hi)) => alloc::format!("reference {} outside [{lo}, {hi}]", refs.primary),
            None => alloc::format!("error {:e} above {:e}", (eval.value - refs.primary).abs(), SIGNED_FACTOR * tolerance),
        };
        settle(report, VerifyStatus::Fail, Some(detail))
    }
}

/// The default verification suite: every family at representative
/// in-constraint parameters. Cases whose fraction diverges are left out.
pub fn builtin_suite() -> Vec<IdentityCase> {
    const BUDGET: usize = 2_000_000;
    let case = |family: Family, params: &[(&str, &str)], tol: f64| {
        let params = params
            .iter()
            .map(|(k, v)| (k.to_string(), parse_rational(v).expect("suite literal")))
            .collect::<Params>();
        IdentityCase { family, params, tolerance: tol, max_terms: BUDGET }
    };
    let mut out = Vec::new();
    for family in [Family::Brouncker, Family::Log2, Family::Log2Limit] {
        out.push(case(family, &[], 1e-5));
    }
    out.push(case(Family::EEuler, &[], 1e-12));
    for family in [
        Family::HalfPi,
        Family::HalfPiAlt,
        Family::ThreeQuarterPi,
        Family::ThreeQuarterPiB,
        Family::ThreeQuarterPiC,
        Family::Golden,
    ] {
        out.push(case(family, &[], 1e-4));
    }
    for (m, n) in [("2", "1"), ("3", "2"), ("4", "3"), ("1", "1")] {
        out.push(case(Family::F1, &[("m", m), ("n", n)], 1e-4));
    }
    out.push(case(Family::F1Frac, &[("m", "3"), ("n", "2")], 1e-4));
    out.push(case(Family::F2, &[("mu", "1"), ("nu", "2"), ("m", "1"), ("n", "1")], 1e-4));
    out.push(case(Family::F2, &[("mu", "1"), ("nu", "1"), ("m", "2"), ("n", "1")], 1e-4));
    for s in ["1", "2", "3", "11/2"] {
        out.push(case(Family::F3, &[("s", s)], 1e-4));
    }
    for form in ["1", "2", "3", "4"] {
        out.push(case(Family::F4, &[("p", "1"), ("q", "1/2"), ("r", "1"), ("form", form)], 1e-4));
    }
    out.push(case(Family::F5, &[("f", "5/2"), ("h", "4"), ("r", "1")], 1e-4));
    out.push(case(Family::F5, &[("f", "2"), ("h", "2"), ("r", "1")], 1e-4));
    out.push(case(Family::F6, &[("f", "1"), ("h", "3/2"), ("r", "1")], 1e-4));
    out.push(case(Family::F6, &[("f", "3"), ("h", "1"), ("r", "2")], 1e-4));
    out.push(case(Family::F7, &[("q", "1"), ("r", "2"), ("s", "1")], 1e-4));
    out.push(case(Family::F7, &[("q", "1/2"), ("r", "3/2"), ("s", "2")], 1e-4));
    out.push(case(Family::F8, &[("a", "3"), ("b", "5/2"), ("c", "2"), ("r", "1"), ("p", "2"), ("q", "1")], 1e-4));
    out.push(case(Family::F8, &[("a", "4"), ("b", "3"), ("c", "11/5"), ("r", "2"), ("p", "2"), ("q", "1")], 1e-4));
    out.push(case(Family::F9, &[("c", "2"), ("g", "1"), ("r", "1"), ("s", "1")], 1e-4));
    for s in ["1", "2"] {
        out.push(case(Family::F10, &[("s", s)], 1e-4));
    }
    out.push(case(Family::F11, &[("a", "1"), ("alpha", "1"), ("b", "1"), ("beta", "1")], 1e-6));
    out.push(case(Family::F11, &[("a", "3/2"), ("alpha", "1"), ("b", "1"), ("beta", "1")], 1e-6));
    out.push(case(Family::F12, &[("a", "1"), ("alpha", "1"), ("b", "1")], 1e-6));
    out.push(case(Family::F12, &[("a", "2"), ("alpha", "1/2"), ("b", "3/2")], 1e-6));
    out
}
