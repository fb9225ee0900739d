//! Continued fractions from Riccati equations.
//!
//! For `y′ + a·x^m + b·x^{m+1}·y + c·y² = 0` with `m + 2 > 0`, the solution
//! with `c·x·y → 1` as `x → 0` satisfies, at `x = 1`,
//!
//! `c·y(1) = 1 + (ac+b)/(−(m+3) + (ac−(m+2)b)/((2m+5) + (ac+(m+3)b)/(−(3m+7) + …)))`.
//!
//! [`solve_riccati`] integrates the same solution numerically through
//! `w = c·x·y`, which obeys `x·w′ = w − w² − b·x^{m+2}·w − ac·x^{m+2}`
//! with `w(0) = 1`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cf_core::{equivalence_transform, eval_float, ContinuedFraction, EvalReport, PartialTerm};
use crate::rational::{int, to_f64, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum RiccatiError {
    #[error("m + 2 must be positive; the boundary condition at infinity (m + 2 < 0) is out of scope")]
    OutOfScope,
    #[error("c must be nonzero")]
    ZeroC,
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error("solution blows up near x = {x} (pole encountered)")]
    PoleEncountered { x: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiccatiProblem {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    m: BigRational,
}

impl RiccatiProblem {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, m: BigRational) -> Result<Self, RiccatiError> {
        if !(&m + int(2)).is_positive() {
            return Err(RiccatiError::OutOfScope);
        }
        if c.is_zero() {
            return Err(RiccatiError::ZeroC);
        }
        Ok(RiccatiProblem { a, b, c, m })
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn m(&self) -> &BigRational {
        &self.m
    }

    /// Depth at which the fraction ends because a partial numerator
    /// vanishes, searching up to `max_depth` terms. In that case the
    /// equation is integrable in closed form.
    pub fn termination_depth(&self, max_depth: usize) -> Option<usize> {
        let ac = &self.a * &self.c;
        (1..=max_depth + 1).find(|&k| numerator(&ac, &self.b, &self.m, k).is_zero()).map(|k| k - 1)
    }
}

/// Partial numerator `k`: `ac + (i(m+2)+1)b` for `k = 2i+1`, `ac − i(m+2)b` for `k = 2i`.
fn numerator<T: Scalar>(ac: &T, b: &T, m: &T, k: usize) -> T {
    let i = T::from_i64((k / 2) as i64);
    let step = i * (m.clone() + T::from_i64(2));
    if k % 2 == 1 {
        ac.clone() + (step + T::from_i64(1)) * b.clone()
    } else {
        ac.clone() - step * b.clone()
    }
}

/// Partial denominator `k` without its sign: `km + 2k + 1`.
fn magnitude<T: Scalar>(m: &T, k: usize) -> T {
    let k = T::from_i64(k as i64);
    k.clone() * m.clone() + k * T::from_i64(2) + T::from_i64(1)
}

fn parity(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The fraction for `c·y(1)` as displayed: leading 1, numerators
/// `ac+b, ac−(m+2)b, …`, denominators `−(m+3), 2m+5, −(3m+7), …`.
/// It stops early, with its exact length, when a numerator vanishes.
pub fn cf_from_riccati(problem: &RiccatiProblem, depth: usize) -> ContinuedFraction {
    let end = problem.termination_depth(depth).unwrap_or(depth);
    let ac = &problem.a * &problem.c;
    let (b, m) = (problem.b.clone(), problem.m.clone());
    let (acf, bf, mf) = (to_f64(&ac), to_f64(&b), to_f64(&m));
    ContinuedFraction::from_fn(int(1), move |k| {
        (k <= end).then(|| PartialTerm::new(numerator(&ac, &b, &m, k), magnitude(&m, k) * int(parity(k))))
    })
    .with_float_terms(move |k| {
        (k <= end).then(|| (numerator(&acf, &bf, &mf, k), magnitude(&mf, k) * parity(k) as f64))
    })
}

/// [`cf_from_riccati`] rescaled by `(−1)^k`, which makes every partial
/// denominator `km + 2k + 1` positive and flips the sign of every numerator.
pub fn normalized_cf(problem: &RiccatiProblem, depth: usize) -> ContinuedFraction {
    let raw = cf_from_riccati(problem, depth);
    let scales: alloc::vec::Vec<BigRational> = (1..=depth).map(|k| int(parity(k))).collect();
    let exact = equivalence_transform(&raw, &scales).expect("unit scales are nonzero");
    let twin = raw.clone();
    exact.with_float_terms(move |k| twin.float_term(k).map(|(b, a)| (-b, a * parity(k) as f64)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ODEResult {
    /// `w(1) = c·y(1)`.
    pub w_at_1: f64,
    pub steps: usize,
    /// Sum of the accepted local error estimates.
    pub est_error: f64,
}

/// Starting abscissa of the integration.
pub const DEFAULT_X0: f64 = 1e-3;

/// Integrates from [`DEFAULT_X0`] to 1 with local tolerance `tol/10`.
pub fn solve_riccati(problem: &RiccatiProblem, tol: f64) -> Result<ODEResult, RiccatiError> {
    solve_riccati_from(problem, tol, DEFAULT_X0)
}

/// As [`solve_riccati`], starting at `x0` from the seed
/// `w(x0) = 1 − (ac+b)·x0^{m+2}/(m+3)`.
pub fn solve_riccati_from(problem: &RiccatiProblem, tol: f64, x0: f64) -> Result<ODEResult, RiccatiError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(RiccatiError::InvalidTolerance);
    }
    let ac = to_f64(&(&problem.a * &problem.c));
    let b = to_f64(&problem.b);
    let e = to_f64(&problem.m) + 2.0;
    let seed = 1.0 - (ac + b) * libm::pow(x0, e) / (e + 1.0);
    // In t = ln x the equation reads dw/dt = w − w² − (b·w + ac)·e^{(m+2)t}.
    let rhs = |t: f64, w: f64| {
        let g = libm::exp(e * t);
        w - w * w - (b * w + ac) * g
    };
    integrate(rhs, libm::log(x0), 0.0, seed, tol / 10.0)
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Adaptive scalar integration from `t0` to `t1`. Each step's error must stay
/// below `local_tol·max(1, |w|)` scaled by the step's share of the interval,
/// so the accumulated estimate never exceeds `local_tol` in relative terms.
fn integrate<F: Fn(f64, f64) -> f64>(f: F, t0: f64, t1: f64, w0: f64, local_tol: f64) -> Result<ODEResult, RiccatiError> {
    let span = t1 - t0;
    let min_step = span * 1e-14;
    let (mut t, mut w) = (t0, w0);
    let mut h = span / 64.0;
    let mut steps = 0usize;
    let mut est_error = 0.0;
    while t1 - t > min_step {
        h = h.min(t1 - t);
        if h < min_step || !w.is_finite() {
            return Err(RiccatiError::PoleEncountered { x: libm::exp(t) });
        }
        let mut k = [0.0f64; 7];
        for i in 0..7 {
            let wi = w + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
            k[i] = f(t + C[i] * h, wi);
        }
        let w5 = w + h * (0..7).map(|i| B5[i] * k[i]).sum::<f64>();
        let w4 = w + h * (0..7).map(|i| B4[i] * k[i]).sum::<f64>();
        let err = (w5 - w4).abs();
        let allowed = local_tol * w.abs().max(1.0) * (h / span);
        if err <= allowed && w5.is_finite() {
            t += h;
            w = w5;
            steps += 1;
            est_error += err;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * libm::pow(allowed / err, 0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    Ok(ODEResult { w_at_1: w, steps, est_error })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiReport {
    pub cf: EvalReport,
    pub ode: ODEResult,
    pub abs_error: f64,
    /// Depth at which the fraction ends, if it terminates.
    pub terminates_at: Option<usize>,
    /// `abs_error` is at most ten times the tolerance.
    pub pass: bool,
}

/// Compares the fraction, cut off at `depth`, with the ODE solution.
pub fn verify_riccati(problem: &RiccatiProblem, depth: usize, tol: f64) -> Result<RiccatiReport, RiccatiError> {
    let ode = solve_riccati(problem, tol)?;
    let cf = eval_float(&normalized_cf(problem, depth), tol, depth.max(1)).map_err(|_| RiccatiError::InvalidTolerance)?;
    let abs_error = (cf.value - ode.w_at_1).abs();
    Ok(RiccatiReport {
        terminates_at: problem.termination_depth(depth),
        pass: abs_error <= 10.0 * tol,
        cf,
        ode,
        abs_error,
    })
}
