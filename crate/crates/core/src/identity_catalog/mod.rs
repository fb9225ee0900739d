//! Catalog of parameterized continued-fraction identities.
//!
//! Every [`Family`] pairs a term rule with one or two independent reference
//! values (Beta closed forms, quadrature, or fixed constants). [`verify`]
//! evaluates the fraction and checks it against the references.

mod chain;
mod checks;
mod constraints;
mod references;
mod rules;
mod verify;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;

pub use chain::{chain_alpha, chain_fraction, resolve_chain_kappa_signs, ChainValue, CHAIN_KAPPA_SIGNS};
pub use checks::{permutation_theorem_check, product_identity_check};
pub use references::{reference_values, References};
pub use rules::make_cf;
pub use verify::{builtin_suite, verify, IdentityCase, VerificationReport, VerifyStatus};

use crate::quadrature::QuadratureError;
use crate::rational::{parse_rational, ParseRationalError};

/// Target handed to the quadrature module for every reference value.
pub const QUADRATURE_TARGET: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} has no parameter {name:?}")]
    UnknownParameter { family: &'static str, name: String },
    #[error("family {family} needs parameter {name:?}")]
    MissingParameter { family: &'static str, name: &'static str },
    #[error("constraint violated: {predicate}")]
    Constraint { predicate: String },
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error("term budget must be positive")]
    InvalidBudget,
    #[error("zero denominator at depth {depth}")]
    UndefinedConvergent { depth: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `1/(1 + 1/(2 + 9/(2 + 25/…))) = π/4`.
    Brouncker,
    /// `1/(1 + 1/(1 + 4/(1 + 9/…))) = ln 2`.
    Log2,
    /// `2 + 2/(2 + 3/(3 + 4/(4 + …))) = e`.
    EEuler,
    /// `2 + 2/(2 + 6/(2 + 12/…)) = 1/(2 ln 2 − 1)`.
    Log2Limit,
    /// `1 + 1/(1 + 2/(1 + 6/(1 + 12/…))) = π/2`.
    HalfPi,
    /// `2 − 1/(2 + 1/(2 + 4/(2 + 9/…))) = π/2`.
    HalfPiAlt,
    /// `1 + 3/(1 + 4/(1 + 10/(1 + 18/…))) = 3π/4`.
    ThreeQuarterPi,
    /// `2 + 1/(2 + 3/(2 + 8/(2 + 15/…))) = 3π/4`.
    ThreeQuarterPiB,
    /// `2 + 2/(3 + 12/(1 + 20/(1 + 30/…))) = 3π/4`.
    ThreeQuarterPiC,
    /// `1 + 1/(2 + 4/(3 + 9/(4 + …)))`, an integral ratio with golden-ratio parameters.
    Golden,
    F1,
    F1Frac,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    /// Default as `(numerator, denominator)`.
    pub default: Option<(i64, i64)>,
}

const fn req(name: &'static str) -> ParamSpec {
    ParamSpec { name, default: None }
}

impl Family {
    pub const ALL: [Family; 23] = [
        Family::Brouncker,
        Family::Log2,
        Family::EEuler,
        Family::Log2Limit,
        Family::HalfPi,
        Family::HalfPiAlt,
        Family::ThreeQuarterPi,
        Family::ThreeQuarterPiB,
        Family::ThreeQuarterPiC,
        Family::Golden,
        Family::F1,
        Family::F1Frac,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F5,
        Family::F6,
        Family::F7,
        Family::F8,
        Family::F9,
        Family::F10,
        Family::F11,
        Family::F12,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Brouncker => "brouncker",
            Family::Log2 => "log2",
            Family::EEuler => "e-euler",
            Family::Log2Limit => "log2-limit",
            Family::HalfPi => "half-pi",
            Family::HalfPiAlt => "half-pi-alt",
            Family::ThreeQuarterPi => "three-quarter-pi",
            Family::ThreeQuarterPiB => "three-quarter-pi-b",
            Family::ThreeQuarterPiC => "three-quarter-pi-c",
            Family::Golden => "golden",
            Family::F1 => "F1",
            Family::F1Frac => "F1-frac",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
            Family::F7 => "F7",
            Family::F8 => "F8",
            Family::F9 => "F9",
            Family::F10 => "F10",
            Family::F11 => "F11",
            Family::F12 => "F12",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        const MN: &[ParamSpec] = &[req("m"), req("n")];
        const F2: &[ParamSpec] = &[req("mu"), req("nu"), req("m"), req("n")];
        const S: &[ParamSpec] = &[req("s")];
        const F4: &[ParamSpec] = &[req("p"), req("q"), req("r"), ParamSpec { name: "form", default: Some((3, 1)) }];
        const FHR: &[ParamSpec] = &[req("f"), req("h"), req("r")];
        const F7: &[ParamSpec] = &[req("q"), req("r"), req("s")];
        const F8: &[ParamSpec] = &[req("a"), req("b"), req("c"), req("r"), req("p"), req("q")];
        const F9: &[ParamSpec] = &[req("c"), req("g"), req("r"), req("s")];
        const F11: &[ParamSpec] = &[req("a"), req("alpha"), req("b"), req("beta")];
        const F12: &[ParamSpec] = &[req("a"), req("alpha"), req("b")];
        match self {
            Family::F1 | Family::F1Frac => MN,
            Family::F2 => F2,
            Family::F3 | Family::F10 => S,
            Family::F4 => F4,
            Family::F5 | Family::F6 => FHR,
            Family::F7 => F7,
            Family::F8 => F8,
            Family::F9 => F9,
            Family::F11 => F11,
            Family::F12 => F12,
            _ => &[],
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::Brouncker => "Brouncker's fraction for pi/4",
            Family::Log2 => "alternating harmonic series as a fraction, ln 2",
            Family::EEuler => "Euler's fraction for e",
            Family::Log2Limit => "limit case f = h + r of F6, 1/(2 ln 2 - 1)",
            Family::HalfPi => "pi/2, all-positive form",
            Family::HalfPiAlt => "pi/2, signed form",
            Family::ThreeQuarterPi => "3pi/4, unit denominators",
            Family::ThreeQuarterPiB => "3pi/4, denominators 2",
            Family::ThreeQuarterPiC => "3pi/4, shifted numerators",
            Family::Golden => "master family at golden-ratio parameters (numeric reference only)",
            Family::F1 => "int_0^1 x^(n-1)/(1+x^m)",
            Family::F1Frac => "int_0^1 dx/(1+x^(m/n)), fractional exponent form",
            Family::F2 => "int_0^1 x^(n-1)(1+x^m)^(-mu/nu); divergent for mu >= 2 nu",
            Family::F3 => "s + 1/(2s + 9/(2s + 25/...)), Brouncker-Wallis family",
            Family::F4 => "ratio of sqrt(1-y^2r) kernels; form 1..4 selects the fraction",
            Family::F5 => "r + fh/(r + (f+r)(h+r)/(r + ...)), dual references",
            Family::F6 => "2r + fh/(2r + (f+r)(h+r)/(2r + ...))",
            Family::F7 => "s + q(r-q)/(2s + (r+q)(2r-q)/(2s + ...))",
            Family::F8 => "master (p, q) family with g = a+b-c-r",
            Family::F9 => "equal partial denominators s, p = q = 1",
            Family::F10 => "1/(s + 4/(s + 9/(s + ...)))",
            Family::F11 => "arithmetic numerators and denominators, exponential-Beta integrals",
            Family::F12 => "arithmetic numerators, constant denominators, Gaussian integrals",
        }
    }

    /// Parameter values in schema order, with defaults filled in.
    pub fn resolve(self, params: &Params) -> Result<Vec<BigRational>, CatalogError> {
        let schema = self.params();
        if let Some(name) = params.0.keys().find(|k| !schema.iter().any(|s| s.name == k.as_str())) {
            return Err(CatalogError::UnknownParameter { family: self.id(), name: name.clone() });
        }
        schema
            .iter()
            .map(|spec| match (params.0.get(spec.name), spec.default) {
                (Some(v), _) => Ok(v.clone()),
                (None, Some((n, d))) => Ok(crate::rational::ratio(n, d)),
                (None, None) => Err(CatalogError::MissingParameter { family: self.id(), name: spec.name }),
            })
            .collect()
    }

    /// The fraction is known not to converge at these parameters, even when
    /// every term is positive.
    pub fn known_divergent(self, params: &Params) -> bool {
        match (self, self.resolve(params)) {
            (Family::F2, Ok(v)) => v[0] >= &v[1] + &v[1],
            _ => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

/// Named exact parameter values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, BigRational>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, name: &str, value: BigRational) -> Self {
        self.insert(name, value);
        self
    }

    pub fn insert(&mut self, name: &str, value: BigRational) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&BigRational> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Builds from `(name, "p/q")` pairs.
    pub fn parse(pairs: &[(&str, &str)]) -> Result<Self, CatalogError> {
        let mut out = Params::new();
        for (k, v) in pairs {
            out.insert(k, parse_rational(v)?);
        }
        Ok(out)
    }
}

impl FromIterator<(String, BigRational)> for Params {
    fn from_iter<I: IntoIterator<Item = (String, BigRational)>>(iter: I) -> Self {
        Params(iter.into_iter().collect())
    }
}
