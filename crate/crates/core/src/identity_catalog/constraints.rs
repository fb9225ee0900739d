use alloc::string::ToString;

use num_rational::BigRational;
use num_traits::Signed;

use super::{CatalogError, Family};
use crate::rational::int;

fn require(ok: bool, predicate: &str) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::Constraint { predicate: predicate.to_string() })
    }
}

fn pos(x: &BigRational) -> bool {
    x.is_positive()
}

/// Positivity and integrability conditions, checked exactly on the
/// resolved parameter vector.
pub(super) fn check(family: Family, v: &[BigRational]) -> Result<(), CatalogError> {
    match family {
        Family::F1 | Family::F1Frac => {
            require(pos(&v[0]), "m > 0")?;
            require(pos(&v[1]), "n > 0")
        }
        Family::F2 => {
            require(pos(&v[0]), "mu > 0")?;
            require(pos(&v[1]), "nu > 0")?;
            require(pos(&v[2]), "m > 0")?;
            require(pos(&v[3]), "n > 0")
        }
        Family::F3 | Family::F10 => require(pos(&v[0]), "s > 0"),
        Family::F4 => {
            let (p, q, r, form) = (&v[0], &v[1], &v[2], &v[3]);
            require([1, 2, 3, 4].iter().any(|&f| *form == int(f)), "form in {1, 2, 3, 4}")?;
            require(pos(p), "p > 0")?;
            require(pos(r), "r > 0")?;
            require(pos(&(p + q + q)), "p+2q > 0")?;
            if *form == int(2) {
                require(r > q, "r > q")?;
            }
            Ok(())
        }
        Family::F5 | Family::F6 => {
            require(pos(&v[0]), "f > 0")?;
            require(pos(&v[1]), "h > 0")?;
            require(pos(&v[2]), "r > 0")
        }
        Family::F7 => {
            let (q, r, s) = (&v[0], &v[1], &v[2]);
            require(pos(r), "r > 0")?;
            require(pos(s), "s > 0")?;
            require(pos(&(r + s - q)), "r+s-q > 0")?;
            require(pos(&(q + r + s)), "q+r+s > 0")
        }
        Family::F8 => {
            let (a, b, c, r, p, q) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
            require(pos(r), "r > 0")?;
            require(pos(p), "p > 0")?;
            require(pos(&(p + q)), "p+q > 0")?;
            require(pos(&(a + b - c - r)), "a+b-c-r > 0")?;
            require(pos(&(c - b + r)), "c-b+r > 0")
        }
        Family::F9 => {
            let (c, g, r, s) = (&v[0], &v[1], &v[2], &v[3]);
            require(pos(c), "c > 0")?;
            require(pos(g), "g > 0")?;
            require(pos(r), "r > 0")?;
            require(pos(s), "s > 0")?;
            require(pos(&(c - g + r + s)), "c-g+r+s > 0")
        }
        Family::F11 => {
            let (a, alpha, b, beta) = (&v[0], &v[1], &v[2], &v[3]);
            require(pos(a), "a > 0")?;
            require(pos(alpha), "alpha > 0")?;
            require(pos(beta), "beta > 0")?;
            require(alpha * alpha + alpha * beta * b > beta * beta * a, "alpha^2+alpha*beta*b > beta^2*a")
        }
        Family::F12 => {
            require(pos(&v[0]), "a > 0")?;
            require(pos(&v[1]), "alpha > 0")?;
            require(pos(&v[2]), "b > 0")
        }
        _ => Ok(()),
    }
}
