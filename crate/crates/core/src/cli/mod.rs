//! Command-line front end.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::leibnizian::DEFAULT_ENUM_LIMIT;
use crate::vclde::{Corruption, GreenMethod, SolveMethod};

/// Environment variable overriding the enumeration guard.
pub const ENUM_LIMIT_VAR: &str = "VCLDE_ENUM_LIMIT";

/// Largest order accepted by `expand`.
pub const EXPAND_LIMIT: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "vclde",
    version,
    about = "Hessenbergian solutions of linear difference equations with variable coefficients"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Green's function H(t,s)
    Green(GreenArgs),
    /// Solution value y_t of an initial-value problem
    Solve(SolveArgs),
    /// Fundamental matrix of Casorati values and its determinant
    Fundamental(FundamentalArgs),
    /// Symbolic expansion of a K-th order Hessenbergian
    Expand(ExpandArgs),
    /// Run the identity suite and report per check
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Arith {
    Rational,
    Float64,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GreenMethodArg {
    Recurrence,
    Leibnizian,
    Nested,
    Companion,
}

impl From<GreenMethodArg> for GreenMethod {
    fn from(m: GreenMethodArg) -> Self {
        match m {
            GreenMethodArg::Recurrence => GreenMethod::Recurrence,
            GreenMethodArg::Leibnizian => GreenMethod::Leibnizian,
            GreenMethodArg::Nested => GreenMethod::Nested,
            GreenMethodArg::Companion => GreenMethod::Companion,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveMethodArg {
    Green,
    Kittappa,
    Leibnizian,
    Nested,
    Recursion,
}

impl From<SolveMethodArg> for SolveMethod {
    fn from(m: SolveMethodArg) -> Self {
        match m {
            SolveMethodArg::Green => SolveMethod::Green,
            SolveMethodArg::Kittappa => SolveMethod::Kittappa,
            SolveMethodArg::Leibnizian => SolveMethod::Leibnizian,
            SolveMethodArg::Nested => SolveMethod::Nested,
            SolveMethodArg::Recursion => SolveMethod::Recursion,
        }
    }
}

/// Where the coefficients come from.
#[derive(Debug, Args)]
struct ModelArgs {
    /// Coefficient file (JSON)
    #[arg(long)]
    coeffs: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "rational")]
    arith: Arith,

    /// Order of the equation; symbolic mode only
    #[arg(long)]
    p: Option<usize>,
}

#[derive(Debug, Args)]
struct GreenArgs {
    #[command(flatten)]
    model: ModelArgs,

    #[arg(long, allow_hyphen_values = true)]
    t: i64,

    #[arg(long, allow_hyphen_values = true)]
    s: i64,

    #[arg(long, value_enum, default_value = "recurrence")]
    method: GreenMethodArg,

    /// Plain-text output instead of JSON
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Problem file (JSON); numeric modes only
    #[arg(long)]
    problem: Option<PathBuf>,

    #[arg(long, allow_hyphen_values = true)]
    t: i64,

    /// Anchor; symbolic mode only
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,

    /// Drop the forcing term; symbolic mode only
    #[arg(long)]
    homogeneous: bool,

    #[arg(long, value_enum, default_value = "green")]
    method: SolveMethodArg,

    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct FundamentalArgs {
    #[command(flatten)]
    model: ModelArgs,

    #[arg(long, allow_hyphen_values = true)]
    t: i64,

    #[arg(long, allow_hyphen_values = true)]
    s: i64,

    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    /// Matrix order K
    #[arg(long)]
    order: usize,

    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,

    #[arg(long)]
    problem: Option<PathBuf>,

    #[arg(long, allow_hyphen_values = true)]
    t: i64,

    #[arg(long, allow_hyphen_values = true)]
    s: i64,

    /// Add one to entry ROW,COL of every recurrence-path principal matrix
    #[arg(long, hide = true, value_parser = parse_corruption)]
    debug_corrupt_phi: Option<Corruption>,
}

fn parse_corruption(s: &str) -> Result<Corruption, String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok(Corruption {
        row: parse(r)?,
        col: parse(c)?,
    })
}

fn enum_limit() -> Result<usize, Error> {
    match std::env::var(ENUM_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{ENUM_LIMIT_VAR}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

/// Outcome of a command that did not fail outright.
enum Outcome {
    Ok(String),
    /// Verification failed: stdout payload plus the error line.
    Failed(String, serde_json::Value),
}

fn error_line(e: &Error) -> serde_json::Value {
    let mut v = json!({
        "error": e.kind(),
        "message": e.to_string(),
        "exit_code": e.exit_code(),
    });
    if let Error::MissingForcing { t } = e {
        v["t"] = json!(t);
    }
    v
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 ok, 1 verification failure, 2 parse/domain error,
/// 3 limit breach, 4 missing data.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(out, "{e}");
                return 0;
            }
            let line = json!({
                "error": "usage",
                "message": e.to_string().lines().next().unwrap_or_default(),
                "exit_code": 2,
            });
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let result = enum_limit().and_then(|limit| match cli.command {
        Command::Green(a) => commands::green(a, limit),
        Command::Solve(a) => commands::solve(a, limit),
        Command::Fundamental(a) => commands::fundamental(a),
        Command::Expand(a) => commands::expand(a),
        Command::Verify(a) => commands::verify(a, limit),
    });
    match result {
        Ok(Outcome::Ok(text)) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Ok(Outcome::Failed(text, line)) => {
            let _ = writeln!(out, "{text}");
            let _ = writeln!(err, "{line}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_line(&e));
            e.exit_code()
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
