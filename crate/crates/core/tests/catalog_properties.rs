use contfrac::cf_core::eval_float;
use contfrac::identity_catalog::{
    chain_alpha, make_cf, reference_values, verify, Family, IdentityCase, Params, VerifyStatus,
};
use contfrac::quadrature::sqrt_kernel_integral;
use contfrac::rational::{ratio, to_f64};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 10;
const TOL: f64 = 1e-4;
const BUDGET: usize = 2_000_000;

/// Uniform on `[lo, hi]` in steps of 1/64, kept exact.
fn draw(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> BigRational {
    let (a, b) = ((lo * 64.0).ceil() as i64, (hi * 64.0).floor() as i64);
    ratio(rng.random_range(a..=b), 64)
}

fn f(x: &BigRational) -> f64 {
    to_f64(x)
}

/// In-constraint parameter draws, kept away from slowly convergent corners.
fn draws(family: Family, rng: &mut ChaCha8Rng) -> Params {
    let mut p = Params::new();
    match family {
        Family::F1 | Family::F1Frac => {
            p.insert("m", draw(rng, 0.5, 4.0));
            p.insert("n", draw(rng, 0.5, 3.0));
        }
        Family::F2 => {
            let nu = draw(rng, 0.5, 2.0);
            p.insert("mu", &nu * draw(rng, 0.1, 1.5));
            p.insert("nu", nu);
            p.insert("m", draw(rng, 0.5, 3.0));
            p.insert("n", draw(rng, 0.5, 3.0));
        }
        // Constant denominators against quadratic numerators converge like
        // k^(−s/r), so s is drawn relative to the numerator growth.
        Family::F3 | Family::F10 => p.insert("s", draw(rng, 1.0, 6.0)),
        Family::F4 => {
            let r = draw(rng, 0.5, 2.0);
            let form = rng.random_range(1..=4i64);
            let q = if form == 2 { &r * draw(rng, 0.1, 0.9) } else { draw(rng, 0.1, 2.0) };
            p.insert("p", draw(rng, 0.5, 3.0));
            p.insert("q", q);
            p.insert("r", r);
            p.insert("form", ratio(form, 1));
        }
        Family::F5 => {
            let r = draw(rng, 0.5, 1.5);
            let lo = &r + draw(rng, 0.3, 2.0);
            let hi = &lo + draw(rng, 0.3, 2.0);
            let (fv, hv) = if rng.random_bool(0.5) { (lo, hi) } else { (hi, lo) };
            p.insert("f", fv);
            p.insert("h", hv);
            p.insert("r", r);
        }
        Family::F6 => {
            p.insert("f", draw(rng, 0.3, 3.0));
            p.insert("h", draw(rng, 0.3, 3.0));
            p.insert("r", draw(rng, 0.5, 1.5));
        }
        Family::F7 => {
            let r = draw(rng, 0.5, 2.0);
            let s = &r * draw(rng, 0.6, 2.0);
            let room = f(&(&r + &s));
            p.insert("q", draw(rng, -0.8 * room, 0.8 * room));
            p.insert("r", r);
            p.insert("s", s);
        }
        Family::F8 => {
            let r = draw(rng, 0.5, 2.0);
            let pp = draw(rng, 0.5, 2.0);
            let q = &pp * draw(rng, 0.1, 0.7);
            let c = draw(rng, 0.5, 3.0);
            let b = draw(rng, 0.0, f(&(&c + &r)) - 0.2);
            let a = &c + &r - &b + draw(rng, 0.2, 2.0);
            for (k, v) in [("a", a), ("b", b), ("c", c), ("r", r), ("p", pp), ("q", q)] {
                p.insert(k, v);
            }
        }
        Family::F9 => {
            let r = draw(rng, 0.5, 1.5);
            let s = &r * draw(rng, 1.2, 3.0);
            let g = draw(rng, 0.5, 3.0);
            let c = draw(rng, 0.5, 3.0).max(&g - &r - &s + ratio(1, 4));
            for (k, v) in [("c", c), ("g", g), ("r", r), ("s", s)] {
                p.insert(k, v);
            }
        }
        Family::F11 => {
            let a = draw(rng, 0.5, 3.0);
            let alpha = draw(rng, 0.5, 2.0);
            let beta = draw(rng, 0.5, 2.0);
            let floor = (&beta * &beta * &a - &alpha * &alpha) / (&alpha * &beta);
            let b = floor.max(BigRational::zero()) + draw(rng, 0.2, 2.0);
            for (k, v) in [("a", a), ("alpha", alpha), ("b", b), ("beta", beta)] {
                p.insert(k, v);
            }
        }
        Family::F12 => {
            p.insert("a", draw(rng, 0.5, 3.0));
            p.insert("alpha", draw(rng, 0.5, 2.0));
            p.insert("b", draw(rng, 0.2, 3.0));
        }
        _ => {}
    }
    p
}

const RANDOM_FAMILIES: [Family; 13] = [
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

#[test]
fn every_family_verifies_on_random_draws() {
    let mut failures = Vec::new();
    for (i, family) in RANDOM_FAMILIES.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE + i as u64);
        for _ in 0..DRAWS {
            let params = draws(family, &mut rng);
            let report = verify(IdentityCase::new(family, params.clone(), TOL, BUDGET).unwrap());
            if report.status != VerifyStatus::Pass {
                failures.push(format!("{family} {params:?}: {:?} {:?}", report.status, report.detail));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_preset_verifies() {
    for family in Family::ALL.into_iter().filter(|f| f.params().is_empty()) {
        let r = verify(IdentityCase::new(family, Params::new(), TOL, BUDGET).unwrap());
        assert_eq!(r.status, VerifyStatus::Pass, "{family}: {r:?}");
    }
}

#[test]
fn generated_denominators_are_nonzero() {
    for (i, family) in RANDOM_FAMILIES.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7 + i as u64);
        for _ in 0..DRAWS {
            let cf = make_cf(family, &draws(family, &mut rng), 200).unwrap();
            assert!(cf.prefix(200).iter().all(|t| !t.denominator.is_zero()), "{family}");
        }
    }
}

#[test]
fn dual_references_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..DRAWS {
        let params = draws(Family::F5, &mut rng);
        let refs = reference_values(Family::F5, &params).unwrap();
        let second = refs.secondary.expect("both f and h exceed r");
        assert!((refs.primary - second).abs() < 1e-9, "{params:?}: {refs:?}");
    }
}

#[test]
fn lemniscate_ratio_at_two() {
    // ∫dy/√(1−y⁴) ÷ ∫y²dy/√(1−y⁴), times s + 1 = 3, as two Beta values.
    let ratio = 3.0 * sqrt_kernel_integral(5.0, 2.0).unwrap() / sqrt_kernel_integral(3.0, 2.0).unwrap();
    let via_beta = {
        let b = |x: f64, y: f64| contfrac::quadrature::beta(x, y).unwrap();
        3.0 * b(1.25, 0.5) / b(0.75, 0.5)
    };
    assert!((ratio - via_beta).abs() < 1e-12);
    let refs = reference_values(Family::F3, &Params::parse(&[("s", "2")]).unwrap()).unwrap();
    assert!((refs.primary - ratio).abs() < 1e-9);
}

#[test]
fn fractional_exponent_is_scaled_integer_form() {
    for (m, n) in [("3", "2"), ("5", "3"), ("2", "5")] {
        let pair = Params::parse(&[("m", m), ("n", n)]).unwrap();
        let frac = reference_values(Family::F1Frac, &pair).unwrap().primary;
        let int_form = reference_values(Family::F1, &pair).unwrap().primary;
        let n: f64 = n.parse().unwrap();
        assert!((frac - n * int_form).abs() < 1e-9, "{m}/{n}");
        let cf = eval_float(&make_cf(Family::F1Frac, &pair, BUDGET).unwrap(), 1e-6, BUDGET).unwrap();
        assert!((cf.value - frac).abs() < 1e-5);
    }
}

#[test]
fn brouncker_prefix() {
    let cf = make_cf(Family::F1, &Params::parse(&[("m", "2"), ("n", "1")]).unwrap(), 4).unwrap();
    let got: Vec<_> = cf.prefix(4).iter().map(|t| (f(&t.numerator), f(&t.denominator))).collect();
    assert_eq!(got, vec![(1.0, 1.0), (1.0, 2.0), (9.0, 2.0), (25.0, 2.0)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn chain_letters_satisfy_relations(
        s in 0.1f64..0.5,
        m in 1.0f64..3.0,
        extra in 0.0f64..2.0,
        kappa in 0.1f64..2.0,
    ) {
        let n = (m + extra).min(3.0);
        let letters: Vec<f64> = (0..4).map(|i| chain_alpha(m, n, s, kappa, i, 20_000).unwrap().value).collect();
        for i in 0..3 {
            let si = i as f64 * s;
            let r = letters[i] * letters[i + 1] - (m + si) * letters[i] - (n + si) * letters[i + 1] - kappa;
            prop_assert!(r.abs() < 1e-8, "shift {}: {}", i, r);
        }
    }
}
