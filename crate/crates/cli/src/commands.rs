use std::collections::BTreeMap;

use contfrac::cf_core::{
    convergent_sequence, euler_series_expansion, eval_float, even_contraction, ContinuedFraction, EvalStatus, PartialTerm,
};
use contfrac::identity_catalog::{builtin_suite, make_cf, verify as verify_case, Family, Params, VerifyStatus};
use contfrac::rational::format_rational;
use contfrac::riccati::{verify_riccati, RiccatiError, RiccatiProblem};
use contfrac::series_transform::{series_to_cf as convert, SeriesError, SeriesSpec};
use contfrac_cli::{load_manifest, round_sig, ManifestError, ReportLine};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{exit, ContractArgs, CfToSeriesArgs, EvalArgs, Failure, FamilyArgs, RiccatiArgs, SeriesArgs, VerifyArgs};

type Outcome = Result<u8, Failure>;

const EXACT_LIMIT: usize = 100;

/// 15 significant digits, switching to exponent form outside `[1e-5, 1e16)`.
fn num(x: f64) -> String {
    match round_sig(x) {
        None => x.to_string(),
        Some(v) if v == 0.0 || (1e-5..1e16).contains(&v.abs()) => v.to_string(),
        Some(v) => format!("{v:e}"),
    }
}

fn json_num(x: Option<f64>) -> Value {
    x.and_then(round_sig).map_or(Value::Null, Value::from)
}

fn exact_params(params: &Params) -> BTreeMap<String, String> {
    params.iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect()
}

fn build(target: &FamilyArgs, depth: usize) -> Result<ContinuedFraction, Failure> {
    make_cf(target.family, &target.params(), depth).map_err(|e| Failure::usage(format!("{}: {e}", target.family)))
}

/// Parenthesized unless a plain nonnegative integer.
fn atom(x: &BigRational) -> String {
    if x.is_integer() && !x.is_negative() {
        format_rational(x)
    } else {
        format!("({})", format_rational(x))
    }
}

/// `lead + b1/(a1 + b2/(a2 + …))`, closed with `…` when `open`.
fn render(leading: &BigRational, terms: &[PartialTerm], open: bool) -> String {
    let mut tail = if open { "…".to_string() } else { String::new() };
    for (i, t) in terms.iter().enumerate().rev() {
        tail = if i + 1 == terms.len() && !open {
            format!("{}/{}", atom(&t.numerator), atom(&t.denominator))
        } else {
            format!("{}/({} + {tail})", atom(&t.numerator), atom(&t.denominator))
        };
    }
    match (leading.is_zero(), tail.is_empty()) {
        (_, true) => format_rational(leading),
        (true, false) => tail,
        (false, false) => format!("{} + {tail}", format_rational(leading)),
    }
}

fn terms_json(terms: &[PartialTerm]) -> Value {
    terms
        .iter()
        .map(|t| json!({"numerator": format_rational(&t.numerator), "denominator": format_rational(&t.denominator)}))
        .collect()
}

enum Shape {
    Text,
    /// A bare array of terms, for fractions whose leading term is zero.
    Array,
    Object,
}

fn print_terms(leading: &BigRational, terms: &[PartialTerm], open: bool, shape: Shape) {
    if let Shape::Array = shape {
        println!("{}", terms_json(terms));
    } else if let Shape::Object = shape {
        println!("{}", json!({"leading": format_rational(leading), "terms": terms_json(terms)}));
    } else {
        println!("leading {}", format_rational(leading));
        for (k, t) in terms.iter().enumerate() {
            println!("{:>4}  {}  {}", k + 1, format_rational(&t.numerator), format_rational(&t.denominator));
        }
        println!("= {}", render(leading, terms, open));
    }
}

pub fn list() -> Outcome {
    for family in Family::ALL {
        let params: Vec<String> = family
            .params()
            .iter()
            .map(|p| match p.default {
                Some((n, 1)) => format!("{}={n}", p.name),
                Some((n, d)) => format!("{}={n}/{d}", p.name),
                None => p.name.to_string(),
            })
            .collect();
        println!("{:<20} {:<22} {}", family.id(), params.join(","), family.description());
    }
    Ok(exit::OK)
}

pub fn eval(args: EvalArgs) -> Outcome {
    let target = &args.target;
    let cf = build(target, args.terms)?;
    let report = eval_float(&cf, args.tol, args.terms).map_err(Failure::usage)?;
    let divergent = target.family.known_divergent(&target.params()) || report.status == EvalStatus::DivergentFlagged;
    let status = if divergent { "divergent" } else { report.status.as_str() };
    let convergents: Vec<String> = if args.exact {
        convergent_sequence(&cf, report.terms_used.min(EXACT_LIMIT))
            .iter()
            .map(|c| c.value().map_or_else(|| "undefined".to_string(), |v| format_rational(&v)))
            .collect()
    } else {
        Vec::new()
    };

    if args.json {
        let mut out = json!({
            "family": target.family.id(),
            "params": exact_params(&target.params()),
            "value": json_num(Some(report.value)),
            "lower": json_num(report.lower),
            "upper": json_num(report.upper),
            "terms": report.terms_used,
            "status": status,
        });
        if args.exact {
            out["convergents"] = json!(convergents);
        }
        println!("{out}");
    } else {
        println!("value    {}", num(report.value));
        if let Some((lo, hi)) = report.bracket() {
            println!("bracket  [{}, {}]", num(lo), num(hi));
        }
        println!("terms    {}", report.terms_used);
        println!("status   {status}");
        for (k, c) in convergents.iter().enumerate() {
            println!("{k:>4}  {c}");
        }
    }
    Ok(match report.status {
        _ if divergent => exit::DIVERGENT,
        EvalStatus::BudgetExhausted => exit::INCOMPLETE,
        _ => exit::OK,
    })
}

/// Fractions built from a series always lead with zero.
fn series_shape(json: bool) -> Shape {
    if json {
        Shape::Array
    } else {
        Shape::Text
    }
}

pub fn series_to_cf(args: SeriesArgs) -> Outcome {
    let n = args.numerators.len();
    let spec = SeriesSpec::new(args.numerators, args.denominators).map_err(Failure::usage)?;
    let depth = args.depth.unwrap_or(n);
    match convert(&spec, depth) {
        Ok(cf) => {
            print_terms(cf.leading(), &cf.prefix(depth), false, series_shape(args.json));
            Ok(exit::OK)
        }
        Err(SeriesError::ZeroPivot { depth, partial }) => {
            print_terms(partial.leading(), &partial.prefix(depth), false, series_shape(args.json));
            eprintln!("contfrac: warning: zero pivot, conversion stops after {depth} terms");
            Ok(exit::INCOMPLETE)
        }
        Err(e) => Err(Failure::usage(e)),
    }
}

pub fn cf_to_series(args: CfToSeriesArgs) -> Outcome {
    let cf = build(&args.target, args.depth)?;
    let series = euler_series_expansion(&cf, args.depth);
    let leading = (!series.leading.is_zero()).then_some(&series.leading);
    let terms: Vec<String> = leading.into_iter().chain(&series.terms).map(format_rational).collect();
    if args.json {
        println!("{}", json!(terms));
    } else {
        for t in &terms {
            println!("{t}");
        }
    }
    // Catalog fractions never terminate, so a short series means a zero continuant.
    if series.terms.len() < args.depth {
        eprintln!("contfrac: warning: series stops after {} terms: zero continuant", series.terms.len());
        return Ok(exit::INCOMPLETE);
    }
    Ok(exit::OK)
}

pub fn contract(args: ContractArgs) -> Outcome {
    let cf = build(&args.target, 2 * args.depth)?;
    let contracted = even_contraction(&cf, args.depth).map_err(|e| Failure { code: exit::INCOMPLETE, message: e.to_string() })?;
    let terms = contracted.prefix(args.depth);
    // Catalog fractions never terminate.
    let shape = if args.json { Shape::Object } else { Shape::Text };
    print_terms(contracted.leading(), &terms, true, shape);
    Ok(exit::OK)
}

pub fn verify(args: VerifyArgs) -> Outcome {
    let cases = match &args.manifest {
        Some(path) => load_manifest(path).map_err(|e| {
            let code = match e {
                ManifestError::Io { .. } => exit::NO_INPUT,
                ManifestError::Invalid { .. } => exit::USAGE,
            };
            Failure { code, message: e.to_string() }
        })?,
        None => builtin_suite(),
    };
    let cases: Vec<_> = cases.into_iter().filter(|c| args.family.map_or(true, |f| f == c.family)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.map_or(0, |j| j.get()))
        .build()
        .map_err(|e| Failure::usage(format!("cannot start workers: {e}")))?;
    // `collect` on an indexed parallel iterator keeps manifest order.
    let reports: Vec<_> = pool.install(|| cases.into_par_iter().map(verify_case).collect());
    let mut all_pass = true;
    for r in &reports {
        println!("{}", ReportLine::from(r).to_json());
        if r.status != VerifyStatus::Pass {
            all_pass = false;
            eprintln!("{} {}: {}", r.case.family, r.status, r.detail.as_deref().unwrap_or(""));
        }
    }
    Ok(if all_pass { exit::OK } else { exit::VERIFY_FAILED })
}

pub fn riccati(args: RiccatiArgs) -> Outcome {
    let problem = RiccatiProblem::new(args.a, args.b, args.c, args.m).map_err(Failure::usage)?;
    let report = match verify_riccati(&problem, args.depth, args.tol) {
        Ok(r) => r,
        Err(e @ RiccatiError::PoleEncountered { .. }) => {
            return Err(Failure { code: exit::VERIFY_FAILED, message: format!("fail: {e}") });
        }
        Err(e) => return Err(Failure::usage(e)),
    };
    let verdict = if report.pass { "pass" } else { "fail" };
    if args.json {
        println!(
            "{}",
            json!({
                "cf": json_num(Some(report.cf.value)),
                "ode": json_num(Some(report.ode.w_at_1)),
                "abs_error": json_num(Some(report.abs_error)),
                "terminates_at": report.terminates_at,
                "status": verdict,
            })
        );
    } else {
        println!("cf         {}", num(report.cf.value));
        println!("ode        {}", num(report.ode.w_at_1));
        println!("abs_error  {}", num(report.abs_error));
        if let Some(k) = report.terminates_at {
            println!("terminates after {k} terms");
        }
        println!("{verdict}");
    }
    Ok(if report.pass { exit::OK } else { exit::VERIFY_FAILED })
}
