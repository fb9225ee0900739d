use alloc::string::ToString;

use super::{CatalogError, QUADRATURE_TARGET};
use crate::quadrature::{sqrt_kernel_integral, PowerBinomialIntegrand};

fn require(ok: bool, predicate: &str) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::Constraint { predicate: predicate.to_string() })
    }
}

fn f7_value(q: f64, r: f64, s: f64) -> Result<f64, CatalogError> {
    require(r > 0.0, "r > 0")?;
    require(s > 0.0, "s > 0")?;
    require(r + s - q > 0.0, "r+s-q > 0")?;
    require(q + r + s > 0.0, "q+r+s > 0")?;
    Ok((q + s) * sqrt_kernel_integral(q + r + s, r)? / sqrt_kernel_integral(r + s - q, r)?)
}

/// `|V(s)·V(s+r) − (s+q)(s+r−q)|`, where `V(s)` is the value of
/// `s + q(r−q)/(2s + (r+q)(2r−q)/(2s + …))`.
pub fn product_identity_check(q: f64, r: f64, s: f64) -> Result<f64, CatalogError> {
    let product = f7_value(q, r, s)? * f7_value(q, r, s + r)?;
    Ok((product - (s + q) * (s + r - q)).abs())
}

/// Swapping `c` and `g = a+b−c−r` in the master integral ratio: returns
/// `|c·I_c(g+r)/I_c(g) − g·I_g(c+r)/I_g(c)|` with
/// `I_x(e) = ∫₀¹ x^{e−1}(1−x^r)^{(x−b)/r}(p+qx^r)^{(x−a)/r}`.
pub fn permutation_theorem_check(a: f64, b: f64, c: f64, r: f64, p: f64, q: f64) -> Result<f64, CatalogError> {
    let g = a + b - c - r;
    require(r > 0.0, "r > 0")?;
    require(p > 0.0, "p > 0")?;
    require(p + q > 0.0, "p+q > 0")?;
    require(c > 0.0, "c > 0")?;
    require(g > 0.0, "a+b-c-r > 0")?;
    require(c - b + r > 0.0, "c-b+r > 0")?;
    require(a - c > 0.0, "a-c > 0")?;
    let side = |x: f64, y: f64| -> Result<f64, CatalogError> {
        let i = |e: f64| PowerBinomialIntegrand::new(e, r, (x - b) / r, (x - a) / r, p, q)?.integral(QUADRATURE_TARGET);
        Ok(x * i(y + r)? / i(y)?)
    };
    Ok((side(c, g)? - side(g, c)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_identity_examples() {
        assert!(product_identity_check(1.0, 2.0, 1.0).unwrap() < 1e-9);
        assert!(product_identity_check(1.0, 2.0, 2.0).unwrap() < 1e-9);
        let (r, s) = (3.0, 0.7);
        let v = f7_value(r / 2.0, r, s).unwrap() * f7_value(r / 2.0, r, s + r).unwrap();
        assert!((v - (s + r / 2.0) * (s + r / 2.0)).abs() < 1e-9);
    }

    #[test]
    fn permutation_examples() {
        assert!(permutation_theorem_check(3.0, 2.5, 2.0, 1.0, 1.0, 1.0).unwrap() < 1e-8);
        assert!(permutation_theorem_check(4.0, 3.0, 2.2, 2.0, 2.0, 1.0).unwrap() < 1e-8);
        // c = g: both sides are the same expression.
        assert!(permutation_theorem_check(3.0, 2.0, 2.0, 1.0, 1.0, 0.5).unwrap() < 1e-10);
    }

    #[test]
    fn permutation_rejects_non_integrable_sides() {
        let e = permutation_theorem_check(2.0, 2.5, 2.0, 1.0, 1.0, 1.0).unwrap_err();
        assert_eq!(e, CatalogError::Constraint { predicate: "a-c > 0".into() });
    }
}
