//! Reference oracles: Gamma/Beta closed forms, double-exponential quadrature
//! and the three-term contiguous relation of the power-binomial integrals.

mod de;
mod gamma;

use alloc::vec::Vec;

pub use de::{de_integral, Domain, Integrand, QuadratureResult, MAX_LEVEL};
pub use gamma::{beta, log_gamma, sqrt_kernel_integral};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum QuadratureError {
    #[error("argument {x} must be positive")]
    NonPositiveArgument { x: f64 },
    #[error("parameter constraint violated: {0}")]
    InvalidParameter(&'static str),
    #[error("quadrature did not converge: estimate {estimate}, error estimate {error_estimate}")]
    NotConverged { estimate: f64, error_estimate: f64 },
}

impl QuadratureResult {
    pub fn into_value(self) -> Result<f64, QuadratureError> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(QuadratureError::NotConverged { estimate: self.value, error_estimate: self.error_estimate })
        }
    }
}

/// `x^{α−1} (1 − x^r)^β (p + q x^r)^γ` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBinomialIntegrand {
    pub alpha: f64,
    pub r: f64,
    pub beta: f64,
    pub gamma_exp: f64,
    pub p: f64,
    pub q: f64,
}

impl PowerBinomialIntegrand {
    pub fn new(alpha: f64, r: f64, beta: f64, gamma_exp: f64, p: f64, q: f64) -> Result<Self, QuadratureError> {
        let k = PowerBinomialIntegrand { alpha, r, beta, gamma_exp, p, q };
        k.validate()?;
        Ok(k)
    }

    /// `1/(1 + x^r)` weighted by `x^{h−1}`.
    pub fn reciprocal(h: f64, r: f64) -> Result<Self, QuadratureError> {
        Self::new(h, r, 0.0, -1.0, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let finite = [self.alpha, self.r, self.beta, self.gamma_exp, self.p, self.q].iter().all(|v| v.is_finite());
        if !finite {
            return Err(QuadratureError::InvalidParameter("finite parameters"));
        }
        if !(self.alpha > 0.0) {
            return Err(QuadratureError::InvalidParameter("alpha > 0"));
        }
        if !(self.r > 0.0) {
            return Err(QuadratureError::InvalidParameter("r > 0"));
        }
        if !(self.beta > -1.0) {
            return Err(QuadratureError::InvalidParameter("beta > -1"));
        }
        if self.gamma_exp != 0.0 && !(self.p > 0.0 && self.p + self.q > 0.0) {
            return Err(QuadratureError::InvalidParameter("p + q x^r > 0 on [0, 1]"));
        }
        Ok(())
    }

    /// `∫₀¹` of the integrand.
    ///
    /// Integrates in `u = x^α`, which removes the `x^{α−1}` endpoint
    /// behaviour: `∫ x^{α−1} g(x) dx = (1/α) ∫ g(u^{1/α}) du`.
    pub fn integral(&self, target: f64) -> Result<f64, QuadratureError> {
        self.validate()?;
        let rho = self.r / self.alpha;
        let g = |u: f64, cu: f64| {
            let ln_u = if u < 0.5 { libm::log(u) } else { libm::log1p(-cu) };
            let xr = libm::exp(rho * ln_u);
            let one_minus = -libm::expm1(rho * ln_u);
            let mut v = 1.0;
            if self.beta != 0.0 {
                v *= libm::pow(one_minus, self.beta);
            }
            if self.gamma_exp != 0.0 {
                v *= libm::pow(self.p + self.q * xr, self.gamma_exp);
            }
            v
        };
        Ok(de_integral(&g, Domain::UnitInterval, target).into_value()? / self.alpha)
    }
}

impl Integrand for PowerBinomialIntegrand {
    fn eval(&self, x: f64, complement: f64) -> f64 {
        let xr = libm::pow(x, self.r);
        let one_minus = if x < 0.5 { 1.0 - xr } else { -libm::expm1(self.r * libm::log1p(-complement)) };
        libm::pow(x, self.alpha - 1.0)
            * libm::pow(one_minus, self.beta)
            * libm::pow(self.p + self.q * xr, self.gamma_exp)
    }
}

/// `∫₀¹ x^{h−1}/(1 + x^r) dx`.
pub fn reciprocal_kernel_integral(h: f64, r: f64, target: f64) -> Result<f64, QuadratureError> {
    PowerBinomialIntegrand::reciprocal(h, r)?.integral(target)
}

/// `∫₀^∞ R^e exp(−(2bR + R²)/(2α)) dR`.
pub fn gaussian_tail_integral(e: f64, alpha: f64, b: f64, target: f64) -> Result<f64, QuadratureError> {
    if !(e > -1.0) || !e.is_finite() {
        return Err(QuadratureError::InvalidParameter("e > -1"));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(QuadratureError::InvalidParameter("alpha > 0"));
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(QuadratureError::InvalidParameter("b >= 0"));
    }
    // R = √α·v turns the weight into exp(−(βv + v²/2)), β = b/√α.
    let root = libm::sqrt(alpha);
    let shift = b / root;
    let weight = |v: f64| libm::exp(-(shift * v + 0.5 * v * v));
    let scale = libm::pow(root, e + 1.0);
    let value = if e < 0.0 {
        // v = w^{1/(e+1)} removes the v^e singularity.
        let k = 1.0 / (e + 1.0);
        de_integral(&|w: f64, _c: f64| weight(libm::pow(w, k)), Domain::HalfLine, target).into_value()? * k
    } else {
        de_integral(&|v: f64, _c: f64| libm::pow(v, e) * weight(v), Domain::HalfLine, target).into_value()?
    };
    Ok(scale * value)
}

/// Parameters of `P = x^{m−1}(1−x^r)^n (p+qx^r)^κ` with `R = x^r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContiguousParams {
    pub m: f64,
    pub n: f64,
    pub kappa: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

/// Residuals `|(a+να)J_ν − (b+νβ)J_{ν+1} − (c+νγ)J_{ν+2}|` for `ν = 0..=nu_max`,
/// where `J_ν = ∫₀¹ P·R^ν dx` and
///
/// `a = mp/r, α = p, b = m(p−q)/r + (n+1)p − (κ+1)q, β = p − q, c = mq/r + (n+κ+2)q, γ = q`.
pub fn contiguous_relation_check(
    params: ContiguousParams,
    nu_max: usize,
    target: f64,
) -> Result<Vec<f64>, QuadratureError> {
    let ContiguousParams { m, n, kappa, p, q, r } = params;
    if !(m > 0.0) {
        return Err(QuadratureError::InvalidParameter("m > 0"));
    }
    if !(n > -1.0) {
        return Err(QuadratureError::InvalidParameter("n > -1"));
    }
    let j = |nu: usize| PowerBinomialIntegrand::new(m + r * nu as f64, r, n, kappa, p, q)?.integral(target);
    let (a, alpha) = (m * p / r, p);
    let (b, beta) = (m * (p - q) / r + (n + 1.0) * p - (kappa + 1.0) * q, p - q);
    let (c, gamma) = (m * q / r + (n + kappa + 2.0) * q, q);
    let values = (0..nu_max + 3).map(j).collect::<Result<Vec<_>, _>>()?;
    Ok((0..=nu_max)
        .map(|nu| {
            let v = nu as f64;
            let lhs = (a + v * alpha) * values[nu];
            let rhs = (b + v * beta) * values[nu + 1] + (c + v * gamma) * values[nu + 2];
            (lhs - rhs).abs()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_4, LN_2, PI};

    #[test]
    fn reciprocal_kernels() {
        assert!((reciprocal_kernel_integral(1.0, 1.0, 1e-12).unwrap() - LN_2).abs() < 1e-12);
        assert!((reciprocal_kernel_integral(1.0, 2.0, 1e-12).unwrap() - FRAC_PI_4).abs() < 1e-12);
        assert!((reciprocal_kernel_integral(2.0, 1.0, 1e-12).unwrap() - (1.0 - LN_2)).abs() < 1e-12);
    }

    #[test]
    fn substitution_matches_direct_integration() {
        let k = PowerBinomialIntegrand::new(0.7, 1.5, -0.4, 0.8, 2.0, -1.0).unwrap();
        let direct = de_integral(&k, Domain::UnitInterval, 1e-12).into_value().unwrap();
        assert!((k.integral(1e-12).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn arcsine_kernel_matches_closed_form() {
        let k = PowerBinomialIntegrand::new(1.0, 2.0, -0.5, 0.0, 1.0, 0.0).unwrap();
        assert!((k.integral(1e-12).unwrap() - PI / 2.0).abs() < 1e-12);
        let direct = de_integral(&k, Domain::UnitInterval, 1e-12).value;
        assert!((direct - sqrt_kernel_integral(1.0, 1.0).unwrap()).abs() < 1e-11);
        let k = PowerBinomialIntegrand::new(3.0, 4.0, -0.5, 0.0, 1.0, 0.0).unwrap();
        assert!((k.integral(1e-12).unwrap() - sqrt_kernel_integral(3.0, 2.0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn integrand_validation() {
        assert!(PowerBinomialIntegrand::new(0.0, 1.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(PowerBinomialIntegrand::new(1.0, 1.0, -1.0, 0.0, 1.0, 0.0).is_err());
        assert!(PowerBinomialIntegrand::new(1.0, 1.0, 0.0, 1.0, 1.0, -2.0).is_err());
        assert!(PowerBinomialIntegrand::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn gaussian_tails() {
        assert!((gaussian_tail_integral(1.0, 1.0, 0.0, 1e-12).unwrap() - 1.0).abs() < 1e-12);
        let half = libm::sqrt(PI / 2.0);
        assert!((gaussian_tail_integral(0.0, 1.0, 0.0, 1e-12).unwrap() - half).abs() < 1e-12);
        // ∫ R^{-1/2} e^{-R²/2} = 2^{-3/4} Γ(1/4).
        let want = libm::pow(2.0, -0.75) * libm::exp(log_gamma(0.25).unwrap());
        assert!((gaussian_tail_integral(-0.5, 1.0, 0.0, 1e-12).unwrap() - want).abs() < 1e-11);
        assert!(gaussian_tail_integral(-1.0, 1.0, 0.0, 1e-12).is_err());
        assert!(gaussian_tail_integral(0.0, 0.0, 0.0, 1e-12).is_err());
    }

    #[test]
    fn gaussian_tail_with_shift_against_riemann_sum() {
        // Midpoint rule on [0, 40] with a fine grid; the integrand is smooth.
        let n = 400_000;
        let h = 40.0 / n as f64;
        let brute: f64 = (0..n).map(|i| libm::exp(-((i as f64 + 0.5) * h) - 0.5 * ((i as f64 + 0.5) * h).powi(2)) * h).sum();
        let de = gaussian_tail_integral(0.0, 1.0, 1.0, 1e-12).unwrap();
        assert!((de - brute).abs() < 1e-9, "{de} {brute}");
    }

    #[test]
    fn contiguous_relation_examples() {
        let r = contiguous_relation_check(ContiguousParams { m: 2.0, n: 1.0, kappa: 0.0, p: 1.0, q: 1.0, r: 1.0 }, 5, 1e-12).unwrap();
        assert!(r.iter().all(|&x| x < 1e-8), "{r:?}");
        let r = contiguous_relation_check(ContiguousParams { m: 1.5, n: 0.5, kappa: -0.7, p: 2.0, q: 0.0, r: 1.3 }, 5, 1e-12).unwrap();
        assert!(r.iter().all(|&x| x < 1e-8), "{r:?}");
        let r = contiguous_relation_check(ContiguousParams { m: 1.0, n: 0.0, kappa: 0.0, p: 1.0, q: 1.0, r: 2.0 }, 0, 1e-12).unwrap();
        assert!(r[0] < 1e-8);
        assert!(contiguous_relation_check(ContiguousParams { m: 0.0, n: 0.0, kappa: 0.0, p: 1.0, q: 1.0, r: 1.0 }, 2, 1e-12).is_err());
    }
}
