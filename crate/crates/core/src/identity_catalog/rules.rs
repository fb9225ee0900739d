use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::constraints::check;
use super::{CatalogError, Family, Params};
use crate::cf_core::{ContinuedFraction, PartialTerm};
use crate::rational::{int, to_f64, Scalar};

/// A term formula. Fixed constants reuse a family formula where one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Rule {
    F1,
    F1Frac,
    F2,
    F3,
    F4 { form: u8 },
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    EEuler,
    HalfPi,
    HalfPiAlt,
    ThreeQuarterPi,
    ThreeQuarterPiB,
    ThreeQuarterPiC,
    Golden,
}

/// The rule for `family` and the values it is applied to.
pub(super) fn rule_for(family: Family, values: &[BigRational]) -> (Rule, Vec<BigRational>) {
    let fixed = |rule, v: &[i64]| (rule, v.iter().map(|&x| int(x)).collect());
    match family {
        Family::Brouncker => fixed(Rule::F1, &[2, 1]),
        Family::Log2 => fixed(Rule::F1, &[1, 1]),
        Family::Log2Limit => fixed(Rule::F6, &[2, 1, 1]),
        Family::EEuler => fixed(Rule::EEuler, &[]),
        Family::HalfPi => fixed(Rule::HalfPi, &[]),
        Family::HalfPiAlt => fixed(Rule::HalfPiAlt, &[]),
        Family::ThreeQuarterPi => fixed(Rule::ThreeQuarterPi, &[]),
        Family::ThreeQuarterPiB => fixed(Rule::ThreeQuarterPiB, &[]),
        Family::ThreeQuarterPiC => fixed(Rule::ThreeQuarterPiC, &[]),
        Family::Golden => fixed(Rule::Golden, &[]),
        Family::F1 => (Rule::F1, values.to_vec()),
        Family::F1Frac => (Rule::F1Frac, values.to_vec()),
        Family::F2 => (Rule::F2, values.to_vec()),
        Family::F3 => (Rule::F3, values.to_vec()),
        Family::F4 => {
            let form = values[3].to_integer().to_u8().unwrap_or(0);
            (Rule::F4 { form }, values[..3].to_vec())
        }
        Family::F5 => (Rule::F5, values.to_vec()),
        Family::F6 => (Rule::F6, values.to_vec()),
        Family::F7 => (Rule::F7, values.to_vec()),
        Family::F8 => (Rule::F8, values.to_vec()),
        Family::F9 => (Rule::F9, values.to_vec()),
        Family::F10 => (Rule::F10, values.to_vec()),
        Family::F11 => (Rule::F11, values.to_vec()),
        Family::F12 => (Rule::F12, values.to_vec()),
    }
}

pub(super) fn leading<T: Scalar>(rule: Rule, v: &[T]) -> T {
    let n = T::from_i64;
    let c = |i: usize| v[i].clone();
    match rule {
        Rule::F3 => c(0),
        Rule::F5 => c(2),
        Rule::F6 => n(2) * c(2),
        Rule::F7 => c(2),
        Rule::F4 { form: 1 } => c(0),
        Rule::F4 { form: 3 } => c(0) + c(1) - c(2),
        Rule::F4 { form: 4 } => c(0) + n(2) * c(1) - c(2),
        Rule::EEuler | Rule::HalfPiAlt | Rule::ThreeQuarterPiB | Rule::ThreeQuarterPiC => n(2),
        Rule::HalfPi | Rule::ThreeQuarterPi | Rule::Golden => n(1),
        _ => n(0),
    }
}

/// Term `k ≥ 1` as `(numerator, denominator)`.
pub(super) fn term<T: Scalar>(rule: Rule, v: &[T], k: usize) -> (T, T) {
    let n = T::from_i64;
    let c = |i: usize| v[i].clone();
    let ki = k as i64;
    let kt = n(ki);
    let sq = |x: T| x.clone() * x;
    match rule {
        Rule::F1 | Rule::F1Frac => {
            let (m, nn) = (c(0), c(1));
            match (k, rule) {
                (1, Rule::F1) => (n(1), nn),
                (1, _) => (n(1), n(1)),
                (2, Rule::F1) => (sq(nn), m),
                (2, _) => (nn, m),
                _ => (sq(n(ki - 2) * m.clone() + nn), m),
            }
        }
        Rule::F2 => {
            let (mu, nu, m, nn) = (c(0), c(1), c(2), c(3));
            match k {
                1 => (n(1), nn),
                2 => (mu.clone() * sq(nn.clone()), nu.clone() * m + (nu - mu) * nn),
                _ => {
                    let j = n(ki - 2);
                    let num = j.clone() * nu.clone() * (mu.clone() + j.clone() * nu.clone()) * sq(j.clone() * m.clone() + nn.clone());
                    let den = ((n(2) * j.clone() + n(1)) * nu.clone() - j * mu.clone()) * m + (nu - mu) * nn;
                    (num, den)
                }
            }
        }
        Rule::F3 => {
            let s2 = n(2) * c(0);
            if k == 1 {
                (n(1), s2)
            } else {
                (sq(n(2 * ki - 1)), s2)
            }
        }
        Rule::F4 { form } => {
            let (p, q, r) = (c(0), c(1), c(2));
            let p2q = p.clone() + n(2) * q.clone();
            match (form, k) {
                (1, 1) => (n(2) * p.clone() * (q - r.clone()), p + r),
                (1, _) => ((p2q + n(ki - 3) * r.clone()) * (p + n(ki - 1) * r.clone()), r),
                (2, 1) => (p, n(1)),
                (2, 2) => (n(2) * (r.clone() - q), p2q - r),
                (2, _) => ((p2q + n(ki - 4) * r.clone()) * (p + n(ki - 2) * r.clone()), r),
                (3, 1) => (q.clone() * (r - q.clone()), p + q),
                (3, _) => ((p + n(ki - 2) * r.clone()) * (p2q + n(ki - 3) * r.clone()), n(2) * r),
                (_, 1) => (-(n(2) * q * (p2q.clone() - r)), p2q),
                (_, _) => ((p + n(ki - 2) * r.clone()) * (p2q + n(ki - 2) * r.clone()), r),
            }
        }
        Rule::F5 | Rule::F6 => {
            let (f, h, r) = (c(0), c(1), c(2));
            let j = n(ki - 1);
            let num = (f + j.clone() * r.clone()) * (h + j * r.clone());
            (num, if rule == Rule::F5 { r } else { n(2) * r })
        }
        Rule::F7 => {
            let (q, r, s) = (c(0), c(1), c(2));
            ((n(ki - 1) * r.clone() + q.clone()) * (kt * r - q), n(2) * s)
        }
        Rule::F8 => {
            let (a, b, cc, r, p, q) = (c(0), c(1), c(2), c(3), c(4), c(5));
            let g = a.clone() + b.clone() - cc.clone() - r.clone();
            if k == 1 {
                (p.clone() * g, a * p - b * q)
            } else {
                let j = n(ki - 1) * r;
                let num = p.clone() * q.clone() * (cc + j.clone()) * (g + j.clone());
                (num, (a + j.clone()) * p - (b + j) * q)
            }
        }
        Rule::F9 => {
            let (cc, g, r, s) = (c(0), c(1), c(2), c(3));
            let j = n(ki - 1) * r;
            ((cc + j.clone()) * (g + j), s)
        }
        Rule::F10 => (sq(kt), c(0)),
        Rule::F11 => {
            let j = n(ki - 1);
            (c(0) + j.clone() * c(1), c(2) + j * c(3))
        }
        Rule::F12 => (c(0) + n(ki - 1) * c(1), c(2)),
        Rule::EEuler => (n(ki + 1), n(ki + 1)),
        Rule::HalfPi => (if k == 1 { n(1) } else { n((ki - 1) * ki) }, n(1)),
        Rule::HalfPiAlt => (if k == 1 { n(-1) } else { n((ki - 1) * (ki - 1)) }, n(2)),
        Rule::ThreeQuarterPi => (if k == 1 { n(3) } else { n((ki - 1) * (ki + 2)) }, n(1)),
        Rule::ThreeQuarterPiB => (if k == 1 { n(1) } else { n((ki - 1) * (ki + 1)) }, n(2)),
        Rule::ThreeQuarterPiC => {
            if k == 1 {
                (n(2), n(3))
            } else {
                (n((ki + 1) * (ki + 2)), n(1))
            }
        }
        Rule::Golden => (sq(kt), n(ki + 1)),
    }
}

/// The family's continued fraction, cut off after `depth` terms.
pub fn make_cf(family: Family, params: &Params, depth: usize) -> Result<ContinuedFraction, CatalogError> {
    let values = family.resolve(params)?;
    check(family, &values)?;
    Ok(build(family, &values).truncated(depth))
}

pub(super) fn build(family: Family, values: &[BigRational]) -> ContinuedFraction {
    let (rule, exact) = rule_for(family, values);
    let approx: Vec<f64> = exact.iter().map(to_f64).collect();
    let lead = leading(rule, &exact);
    ContinuedFraction::from_fn(lead, move |k| {
        let (b, a) = term(rule, &exact, k);
        Some(PartialTerm::new(b, a))
    })
    .with_float_terms(move |k| Some(term(rule, &approx, k)))
}
