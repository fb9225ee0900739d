use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use contfrac::identity_catalog::{Family, Params};
use contfrac::rational::parse_rational;
use num_rational::BigRational;

mod commands;

/// Exit statuses, following sysexits where one fits.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    /// Budget exhausted, zero pivot, or an undefined contraction.
    pub const INCOMPLETE: u8 = 2;
    pub const DIVERGENT: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const NO_INPUT: u8 = 66;
}

#[derive(Parser)]
#[command(name = "contfrac", version, about = "Continued fractions: evaluate, convert, contract and verify identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog families with their parameters.
    List,
    /// Evaluate a catalog fraction in floating point.
    Eval(EvalArgs),
    /// Convert between alternating series and continued fractions.
    #[command(subcommand)]
    Convert(ConvertCommand),
    /// Print the even contraction of a catalog fraction.
    Contract(ContractArgs),
    /// Verify catalog identities, one JSON line per case.
    Verify(VerifyArgs),
    /// Compare the Riccati continued fraction with a direct ODE solution at x = 1.
    Riccati(Box<RiccatiArgs>),
}

#[derive(Args)]
struct FamilyArgs {
    /// Family id, for example `brouncker`, `e-euler` or `F5` (see `list`).
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Parameter as `name=value`; values are exact (`3/4`, `2.5`, `-1`).
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    params: Vec<(String, BigRational)>,
}

impl FamilyArgs {
    fn params(&self) -> Params {
        self.params.iter().cloned().collect()
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    target: FamilyArgs,
    /// Term budget.
    #[arg(long, default_value_t = 2_000_000)]
    terms: usize,
    /// Stop once the bracket (or successive change) is below this.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Also print the exact convergents (at most the first 100).
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConvertCommand {
    /// `n0/d0 - n1/d1 + n2/d2 - ...` to a continued fraction.
    SeriesToCf(SeriesArgs),
    /// A catalog fraction to its equivalent alternating series.
    CfToSeries(CfToSeriesArgs),
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true, value_parser = parse_value)]
    numerators: Vec<BigRational>,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true, value_parser = parse_value)]
    denominators: Vec<BigRational>,
    /// Number of terms to emit; defaults to the series length.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CfToSeriesArgs {
    #[command(flatten)]
    target: FamilyArgs,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ContractArgs {
    #[command(flatten)]
    target: FamilyArgs,
    /// Terms of the contracted fraction.
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON manifest; the built-in suite when absent.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Only run cases of this family.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Worker threads; all cores by default.
    #[arg(long)]
    jobs: Option<NonZeroUsize>,
}

#[derive(Args)]
struct RiccatiArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    a: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    b: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    c: BigRational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_value)]
    m: BigRational,
    /// Terms of the continued fraction.
    #[arg(long, default_value_t = 60)]
    depth: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}; run `contfrac list` for the catalog"))
}

fn parse_value(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_param(s: &str) -> Result<(String, BigRational), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {s:?}"))?;
    Ok((k.trim().to_string(), parse_value(v)?))
}

/// A command that stopped early: exit status plus the message for stderr.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl ToString) -> Self {
        Failure { code: exit::USAGE, message: message.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            };
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::List => commands::list(),
        Command::Eval(a) => commands::eval(a),
        Command::Convert(ConvertCommand::SeriesToCf(a)) => commands::series_to_cf(a),
        Command::Convert(ConvertCommand::CfToSeries(a)) => commands::cf_to_series(a),
        Command::Contract(a) => commands::contract(a),
        Command::Verify(a) => commands::verify(a),
        Command::Riccati(a) => commands::riccati(*a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("contfrac: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
