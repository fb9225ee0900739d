use std::collections::BTreeMap;

use contfrac::identity_catalog::VerificationReport;
use contfrac::rational::format_rational;
use serde::{Deserialize, Serialize};

/// Significant digits kept in every printed float.
pub const SIG_DIGITS: usize = 15;

/// Rounds to [`SIG_DIGITS`] significant digits. Non-finite values have no
/// JSON form and become `None`.
pub fn round_sig(x: f64) -> Option<f64> {
    if !x.is_finite() {
        return None;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().ok()
}

/// One verification result, serialized as a single JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub family: String,
    /// Exact parameter values as `p/q` strings.
    pub params: BTreeMap<String, String>,
    pub value: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
    pub terms: Option<usize>,
    pub status: String,
}

impl From<&VerificationReport> for ReportLine {
    fn from(r: &VerificationReport) -> Self {
        let eval = r.eval.as_ref();
        ReportLine {
            family: r.case.family.id().to_string(),
            params: r.case.params.iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect(),
            value: eval.and_then(|e| round_sig(e.value)),
            lower: eval.and_then(|e| e.lower).and_then(round_sig),
            upper: eval.and_then(|e| e.upper).and_then(round_sig),
            reference: r.references.and_then(|refs| round_sig(refs.primary)),
            abs_error: r.abs_error.and_then(round_sig),
            terms: eval.map(|e| e.terms_used),
            status: r.status.as_str().to_string(),
        }
    }
}

impl ReportLine {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report lines always serialize")
    }
}
