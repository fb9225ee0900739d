//! Manifest format: a JSON array of
//! `{"family": "F5", "params": {"f": "5/2", "h": 4, "r": 1}, "tolerance": 1e-4, "max_terms": 1000000}`.
//! Parameters may be JSON numbers or exact `p/q` strings; `params`,
//! `tolerance` and `max_terms` are optional.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use contfrac::identity_catalog::{Family, IdentityCase, Params};
use contfrac::rational::parse_rational;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    /// Carries serde_json's line and column.
    #[error("invalid manifest {path}: {source}")]
    Invalid { path: PathBuf, source: serde_json::Error },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ParamValue {
    Number(serde_json::Number),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    family: String,
    #[serde(default)]
    params: BTreeMap<String, ParamValue>,
    tolerance: Option<f64>,
    max_terms: Option<usize>,
}

impl RawEntry {
    fn into_case(self) -> Result<IdentityCase, String> {
        let raw = self;
        let family: Family = raw.family.parse().map_err(|e| format!("{e}"))?;
        let mut params = Params::new();
        for (name, value) in &raw.params {
            let text = match value {
                ParamValue::Number(n) => n.to_string(),
                ParamValue::Text(s) => s.clone(),
            };
            params.insert(name, parse_rational(&text).map_err(|e| format!("{family} parameter {name}: {e}"))?);
        }
        family.resolve(&params).map_err(|e| e.to_string())?;
        let tolerance = raw.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        let max_terms = raw.max_terms.unwrap_or(DEFAULT_MAX_TERMS);
        IdentityCase::new(family, params, tolerance, max_terms).map_err(|e| format!("{family}: {e}"))
    }
}

/// Parses manifest text. Unknown families, unknown or missing parameter
/// names and malformed values are rejected with line and column.
pub fn parse_manifest(text: &str) -> Result<Vec<IdentityCase>, serde_json::Error> {
    serde_json::from_str::<Manifest>(text).map(|m| m.0)
}

struct Manifest(Vec<IdentityCase>);

impl<'de> Deserialize<'de> for Manifest {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct Entries;

        impl<'de> Visitor<'de> for Entries {
            type Value = Manifest;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of identity cases")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Manifest, A::Error> {
                let mut out = Vec::new();
                while let Some(raw) = seq.next_element::<RawEntry>()? {
                    let case = raw.into_case().map_err(|e| de::Error::custom(format!("entry {}: {e}", out.len() + 1)))?;
                    out.push(case);
                }
                Ok(Manifest(out))
            }
        }

        d.deserialize_seq(Entries)
    }
}

pub fn load_manifest(path: &Path) -> Result<Vec<IdentityCase>, ManifestError> {
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io { path: path.to_owned(), source })?;
    parse_manifest(&text).map_err(|source| ManifestError::Invalid { path: path.to_owned(), source })
}
