//! Command-line front end behind the `zeta` binary.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constants::{euler_factor, zeta_closed_form, Side};
use crate::constructions::{WeightData, DEFAULT_BUDGET};
use crate::decimal::to_decimal;
use crate::error::Error;
use crate::scalar::ExactScalar;
use crate::verify::{self, GridSpec, Status, Suite, VerifyOptions};

pub const BUDGET_ENV: &str = "ZETA_BUDGET_MONOMIALS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zeta", version, about = "Exact evaluation and verification of the archimedean doubling zeta integral")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the zeta integral or a modified Euler factor exactly.
    Eval(EvalArgs),
    /// Run verification suites over a grid of weights.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Zeta,
    #[value(name = "euler+")]
    EulerPlus,
    #[value(name = "euler-")]
    EulerMinus,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub what: Quantity,
    #[arg(long)]
    pub n: usize,
    /// Defaults to `n + 1` for `euler-`, which does not depend on it.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 30)]
    pub precision: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A suite name or `all`.
    pub suite: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<i64>>,
    /// Largest `t_1` on the grid.
    #[arg(long)]
    pub tmax: Option<i64>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Largest `k − n` on the grid.
    #[arg(long)]
    pub grid_k: Option<usize>,
    /// Largest `Σ(t_j − k)` on the grid.
    #[arg(long)]
    pub grid_deg: Option<i64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 30)]
    pub precision: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report 0 ms for every case, for byte-stable output.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, hide = true)]
    pub perturb: Option<String>,
}

/// Failure before any result is produced; always maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidWeight(m) => UsageError(m),
            e => UsageError(e.to_string()),
        }
    }
}

fn budget_from_env() -> Result<usize, UsageError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("{BUDGET_ENV} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// An exact value with its canonical rendering and a decimal.
#[derive(Serialize)]
pub struct ScalarDoc<'a> {
    #[serde(flatten)]
    pub exact: &'a ExactScalar,
    pub text: String,
    pub decimal: String,
}

impl<'a> ScalarDoc<'a> {
    pub fn new(x: &'a ExactScalar, precision: u32) -> Self {
        ScalarDoc {
            exact: x,
            text: x.render(),
            decimal: to_decimal(x, precision).to_string(),
        }
    }
}

#[derive(Serialize)]
struct ComponentsDoc<'a> {
    dim_gl: ScalarDoc<'a>,
    dim_lambda: ScalarDoc<'a>,
    formal_degree: ScalarDoc<'a>,
    siegel_gamma: ScalarDoc<'a>,
    gamma_product: ScalarDoc<'a>,
    prefactor: ScalarDoc<'a>,
}

#[derive(Serialize)]
struct EvalDoc<'a> {
    case: String,
    value: ScalarDoc<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<ComponentsDoc<'a>>,
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), UsageError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| UsageError(e.to_string()))
        }
    }
}

pub fn eval(args: &EvalArgs, stdout: &mut dyn Write) -> Result<i32, UsageError> {
    let k = match (args.k, args.what) {
        (Some(k), _) => k,
        (None, Quantity::EulerMinus) => args.n + 1,
        (None, _) => return Err(UsageError("--k is required".into())),
    };
    let w = WeightData::new(args.n, k, args.t.clone())?;
    let s = match (args.what, args.s) {
        (Quantity::Zeta, _) => None,
        (_, Some(s)) => Some(s),
        (_, None) => return Err(UsageError("--s is required for Euler factors".into())),
    };
    let (name, value, zeta) = match args.what {
        Quantity::Zeta => {
            let z = zeta_closed_form(&w)?;
            ("zeta".to_string(), z.value.clone(), Some(z))
        }
        q => {
            let (label, side) = if q == Quantity::EulerPlus {
                ("euler+", Side::Plus)
            } else {
                ("euler-", Side::Minus)
            };
            let s = s.expect("checked above");
            (format!("{label}/s={s}"), euler_factor(&w, s, side)?, None)
        }
    };
    let case = format!("{name}/{w}");
    let p = args.precision;
    let text = if args.json {
        let doc = EvalDoc {
            case,
            value: ScalarDoc::new(&value, p),
            components: zeta.as_ref().map(|z| {
                let c = &z.components;
                ComponentsDoc {
                    dim_gl: ScalarDoc::new(&c.dim_gl, p),
                    dim_lambda: ScalarDoc::new(&c.dim_lambda, p),
                    formal_degree: ScalarDoc::new(&c.formal_degree, p),
                    siegel_gamma: ScalarDoc::new(&c.siegel_gamma, p),
                    gamma_product: ScalarDoc::new(&c.gamma_product, p),
                    prefactor: ScalarDoc::new(&c.prefactor, p),
                }
            }),
        };
        serde_json::to_string_pretty(&doc).expect("json") + "\n"
    } else {
        format!("{case}\nexact   = {}\ndecimal = {}\n", value.render(), to_decimal(&value, p))
    };
    emit(&text, &args.out, stdout)?;
    Ok(EXIT_PASS)
}

pub fn verify_cmd(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, UsageError> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let perturb = args.perturb.as_deref().map(str::parse).transpose()?;
    let grid = GridSpec {
        n: args.n,
        k: args.k,
        t: args.t.clone(),
        grid_n: args.grid_n,
        grid_k: args.grid_k,
        grid_deg: args.grid_deg,
        tmax: args.tmax,
    };
    let defaults = VerifyOptions::default();
    let opts = VerifyOptions {
        seed: args.seed.unwrap_or(defaults.seed),
        budget: budget_from_env()?,
        precision: args.precision,
        timing: !args.no_timing,
        perturb,
    };
    let reports = verify::run(&suites, &grid, &opts)?;
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::SkippedBudget));
    let text = if args.json {
        serde_json::to_string_pretty(&reports).expect("json") + "\n"
    } else {
        let mut t: String = reports.iter().map(|r| format!("{r}\n")).collect();
        t += &format!("{pass} passed, {fail} failed, {skip} skipped-budget\n");
        t
    };
    emit(&text, &args.out, stdout)?;
    Ok(if fail == 0 { EXIT_PASS } else { EXIT_FAIL })
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let mut stdout = std::io::stdout().lock();
    let res = match &cli.command {
        Command::Eval(a) => eval(a, &mut stdout),
        Command::Verify(a) => verify_cmd(a, &mut stdout),
    };
    match res {
        Ok(code) => code,
        Err(UsageError(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
    }
}
