use core::f64::consts::{E, FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_rational::BigRational;

use super::constraints::check;
use super::{CatalogError, Family, Params, QUADRATURE_TARGET};
use crate::quadrature::{
    de_integral, gaussian_tail_integral, reciprocal_kernel_integral, sqrt_kernel_integral, Domain,
    PowerBinomialIntegrand, QuadratureError,
};
use crate::rational::to_f64;

/// One or two independently computed values for a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct References {
    pub primary: f64,
    /// Second representation, present for dual-reference families.
    pub secondary: Option<f64>,
}

impl References {
    fn single(v: f64) -> Self {
        References { primary: v, secondary: None }
    }

    /// Largest distance between the two representations (0 when single).
    pub fn disagreement(&self) -> f64 {
        self.secondary.map_or(0.0, |s| (s - self.primary).abs())
    }
}

const T: f64 = QUADRATURE_TARGET;

fn pb(alpha: f64, r: f64, beta: f64, gamma: f64, p: f64, q: f64) -> Result<f64, QuadratureError> {
    PowerBinomialIntegrand::new(alpha, r, beta, gamma, p, q)?.integral(T)
}

/// Reference value(s) of the family's fraction at `params`.
pub fn reference_values(family: Family, params: &Params) -> Result<References, CatalogError> {
    let exact = family.resolve(params)?;
    check(family, &exact)?;
    Ok(compute(family, &exact)?)
}

fn compute(family: Family, exact: &[BigRational]) -> Result<References, QuadratureError> {
    let v: alloc::vec::Vec<f64> = exact.iter().map(to_f64).collect();
    let one = References::single;
    Ok(match family {
        Family::Brouncker => one(FRAC_PI_4),
        Family::Log2 => one(LN_2),
        Family::EEuler => one(E),
        Family::Log2Limit => one(1.0 / (2.0 * LN_2 - 1.0)),
        Family::HalfPi | Family::HalfPiAlt => one(FRAC_PI_2),
        Family::ThreeQuarterPi | Family::ThreeQuarterPiB | Family::ThreeQuarterPiC => one(0.75 * PI),
        Family::Golden => {
            let root5 = libm::sqrt(5.0);
            let (p, q) = ((root5 + 1.0) / 2.0, (root5 - 1.0) / 2.0);
            let n = (1.0 - root5) / (2.0 * root5);
            let kappa = (-root5 - 1.0) / (2.0 * root5);
            one(1.0 + q * pb(2.0, 1.0, n, kappa, p, q)? / pb(1.0, 1.0, n, kappa, p, q)?)
        }
        Family::F1 => one(reciprocal_kernel_integral(v[1], v[0], T)?),
        Family::F1Frac => one(reciprocal_kernel_integral(1.0, v[0] / v[1], T)?),
        Family::F2 => one(pb(v[3], v[2], 0.0, -v[0] / v[1], 1.0, 1.0)?),
        Family::F3 => {
            let s = v[0];
            one((s + 1.0) * sqrt_kernel_integral(s + 3.0, 2.0)? / sqrt_kernel_integral(s + 1.0, 2.0)?)
        }
        Family::F4 => {
            let (p, q, r) = (v[0], v[1], v[2]);
            let w = p + 2.0 * q;
            one((w - r) * sqrt_kernel_integral(w, r)? / sqrt_kernel_integral(p, r)?)
        }
        Family::F5 => f5(&v, exact)?,
        Family::F6 => one(f6(&v, exact)?),
        Family::F7 => {
            let (q, r, s) = (v[0], v[1], v[2]);
            one((q + s) * sqrt_kernel_integral(q + r + s, r)? / sqrt_kernel_integral(r + s - q, r)?)
        }
        Family::F8 => {
            let (a, b, c, r, p, q) = (v[0], v[1], v[2], v[3], v[4], v[5]);
            let g = a + b - c - r;
            let i = |e: f64| pb(e, r, (c - b) / r, (c - a) / r, p, q);
            one(i(g + r)? / i(g)?)
        }
        Family::F9 => {
            let (c, g, r, s) = (v[0], v[1], v[2], v[3]);
            let beta = (c - g - r + s) / (2.0 * r);
            let gamma = (c - g - r - s) / (2.0 * r);
            let i = |e: f64| pb(e, r, beta, gamma, 1.0, 1.0);
            one(c * i(g + r)? / i(g)?)
        }
        Family::F10 => {
            let s = v[0];
            one(1.0 / (2.0 * reciprocal_kernel_integral(s + 1.0, 2.0, T)?) - s)
        }
        Family::F11 => {
            let (a, alpha, b, beta) = (v[0], v[1], v[2], v[3]);
            let bb = beta * beta;
            let e = (alpha * alpha + alpha * beta * b - alpha * bb - bb * a) / (alpha * bb);
            let rate = alpha / bb;
            let moment = |power: f64| {
                let f = |x: f64, c: f64| libm::exp(rate * x) * libm::pow(x, power) * libm::pow(c, e);
                de_integral(&f, Domain::UnitInterval, T).into_value()
            };
            one(alpha * moment(a / alpha)? / (beta * moment((a - alpha) / alpha)?))
        }
        Family::F12 => {
            let (a, alpha, b) = (v[0], v[1], v[2]);
            let g = |e: f64| gaussian_tail_integral(e, alpha, b, T);
            one(g(a / alpha)? / g(a / alpha - 1.0)?)
        }
    })
}

/// Both representations of the `r + fh/(r + …)` family.
fn f5(v: &[f64], exact: &[BigRational]) -> Result<References, QuadratureError> {
    let (f, h, r) = (v[0], v[1], v[2]);
    let j = |x: f64| sqrt_kernel_integral(x, r);
    let primary = if exact[0] == exact[1] {
        let i = reciprocal_kernel_integral(h, r, T)?;
        (1.0 - (h - r) * i) / i
    } else {
        let (jf, jh) = (j(f + r)?, j(h + r)?);
        (h * (f - r) * jh - f * (h - r) * jf) / (f * jf - h * jh)
    };
    let (lo, hi) = if f <= h { (f, h) } else { (h, f) };
    let secondary = if lo > r {
        let e = (hi - lo) / (2.0 * r);
        let i = |x: f64| pb(x, r, e, e - 1.0, 1.0, 1.0);
        Some((lo - r) * i(lo - r)? / i(lo)?)
    } else {
        None
    };
    Ok(References { primary, secondary })
}

/// The `2r + fh/(2r + …)` family; the two-integral form is 0/0 when
/// `|f − h| = r`, where the limit expression takes over.
fn f6(v: &[f64], exact: &[BigRational]) -> Result<f64, QuadratureError> {
    let (f, h, r) = (v[0], v[1], v[2]);
    let gap = &exact[0] - &exact[1];
    if gap == exact[2] || -gap == exact[2] {
        let h = f.min(h);
        let i = reciprocal_kernel_integral(h, r, T)?;
        return Ok((h + 2.0 * h * (r - h) * i) / (2.0 * h * i - 1.0));
    }
    let j = |x: f64| sqrt_kernel_integral(x, r);
    let (jf, jh) = (j(f)?, j(h + r)?);
    Ok((2.0 * (r - f) * (r - h) * jf - h * (f + h - 3.0 * r) * jh) / (2.0 * h * jh - (f + h - r) * jf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refs(family: Family, params: &[(&str, &str)]) -> References {
        reference_values(family, &Params::parse(params).unwrap()).unwrap()
    }

    #[test]
    fn f3_at_one_is_four_over_pi() {
        assert!((refs(Family::F3, &[("s", "1")]).primary - 4.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn f1_at_unit_parameters_is_log2() {
        assert!((refs(Family::F1, &[("m", "1"), ("n", "1")]).primary - LN_2).abs() < 1e-12);
    }

    #[test]
    fn f6_limit_matches_fixed_case() {
        let v = refs(Family::F6, &[("f", "2"), ("h", "1"), ("r", "1")]).primary;
        assert!((v - 1.0 / (2.0 * LN_2 - 1.0)).abs() < 1e-12);
        assert!((v - 2.588_699).abs() < 1e-5);
    }

    #[test]
    fn f5_representations_agree() {
        let r = refs(Family::F5, &[("f", "5/2"), ("h", "4"), ("r", "1")]);
        assert!(r.disagreement() < 1e-9, "{r:?}");
        let r = refs(Family::F5, &[("f", "2"), ("h", "2"), ("r", "1")]);
        assert!(r.disagreement() < 1e-9, "{r:?}");
        assert!(refs(Family::F5, &[("f", "1/2"), ("h", "2"), ("r", "1")]).secondary.is_none());
    }

    #[test]
    fn f11_unit_parameters() {
        let v = refs(Family::F11, &[("a", "1"), ("alpha", "1"), ("b", "1"), ("beta", "1")]).primary;
        assert!((v - 1.0 / (E - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn constraint_checked_first() {
        let p = Params::parse(&[("s", "-1")]).unwrap();
        assert!(matches!(reference_values(Family::F3, &p), Err(CatalogError::Constraint { .. })));
    }
}
