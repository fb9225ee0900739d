//! File formats shared by the `contfrac` binary and its tests: the JSON-lines
//! verification report and the JSON manifest.

pub mod manifest;
pub mod report;

pub use manifest::{load_manifest, parse_manifest, ManifestError};
pub use report::{round_sig, ReportLine};
