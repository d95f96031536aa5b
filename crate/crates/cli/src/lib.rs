//! Command-line frontend for `modunits-core`.
//!
//! Every subcommand builds a [`report::Report`], printed either as a text
//! table or, with `--json`, as a single JSON object.

mod commands;
mod render;
pub mod report;
mod verify;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use modunits_core::transform::NumericParams;
use modunits_core::Error;

pub use render::render;
use report::{Output, Report, VerifyOutput};
pub use verify::SUITES;

#[derive(Debug, Parser)]
#[command(name = "modunits", version, about = "Cuspidal class groups and generalized Jacobians of X0(N)")]
pub struct Cli {
    /// Print a JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include the wall-clock time of the computation.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PrimePower {
    /// Prime p >= 5.
    #[arg(long)]
    pub p: u64,
    /// Exponent n >= 1.
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cusps of X0(N) with degree and width.
    Cusps { level: u64 },
    /// Ligozat's conditions for an eta quotient such as "eta(5)^6 * eta(1)^-6".
    EtaCheck {
        expr: String,
        #[arg(long)]
        level: u64,
    },
    /// Divisor of an eta quotient on X0(N).
    Divisor {
        expr: String,
        #[arg(long)]
        level: u64,
    },
    /// Cuspidal class group, either for p^n or for a level N.
    ClassGroup {
        #[arg(long, requires = "n", conflicts_with = "level")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        n: Option<u32>,
        #[arg(long = "N", required_unless_present = "p")]
        level: Option<u64>,
    },
    /// Order matrices M, U, V and their determinant identities.
    Matrices(PrimePower),
    /// Leading coefficients of f, g_k at every cusp, with numeric residuals.
    LeadingCoeffs(PrimePower),
    /// The matrix Delta and its cokernel.
    Delta(PrimePower),
    /// Rational torsion of the generalized Jacobian.
    Torsion {
        #[arg(long, requires = "n", conflicts_with = "pq")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        n: Option<u32>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"], required_unless_present = "p")]
        pq: Option<Vec<u64>>,
    },
    /// Level pq with p, q = 1 mod 12.
    Pq { p: u64, q: u64 },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Scope(_) | Error::InvalidInput(_) | Error::Parse(_) | Error::NotModular(_) => 2,
            Error::NotInLattice | Error::RankMismatch { .. } | Error::Internal(_) => 1,
        };
        let mut message = e.to_string();
        if matches!(e, Error::Scope(_)) && message.contains("p >= 5") {
            message.push_str(" (standing hypothesis; p = 2 and p = 3 are excluded)");
        }
        Failure { code, message }
    }
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Builds the report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    let start = Instant::now();
    let (command, inputs, output) = match &cli.command {
        Command::Cusps { level } => {
            ("cusps", inputs(&[("level", level.to_string())]), Output::Cusps(commands::cusps_output(*level)?))
        }
        Command::EtaCheck { expr, level } => (
            "eta-check",
            inputs(&[("expr", expr.clone()), ("level", level.to_string())]),
            Output::EtaCheck(commands::eta_check_output(expr, *level)?),
        ),
        Command::Divisor { expr, level } => (
            "divisor",
            inputs(&[("expr", expr.clone()), ("level", level.to_string())]),
            Output::Divisor(commands::divisor_output(expr, *level)?),
        ),
        Command::ClassGroup { p, n, level } => {
            let mut i = Vec::new();
            if let (Some(p), Some(n)) = (p, n) {
                i.push(("p", p.to_string()));
                i.push(("n", n.to_string()));
            }
            if let Some(l) = level {
                i.push(("N", l.to_string()));
            }
            ("class-group", inputs(&i), Output::ClassGroup(commands::class_group_output(*p, *n, *level)?))
        }
        Command::Matrices(pp) => {
            ("matrices", pp_inputs(pp), Output::Matrices(commands::matrices_output(pp.p, pp.n)?))
        }
        Command::LeadingCoeffs(pp) => (
            "leading-coeffs",
            pp_inputs(pp),
            Output::LeadingCoeffs(commands::leading_coeffs_output(pp.p, pp.n, NumericParams::default())?),
        ),
        Command::Delta(pp) => ("delta", pp_inputs(pp), Output::Delta(commands::delta_output(pp.p, pp.n)?)),
        Command::Torsion { p, n, pq } => match (p, n, pq.as_deref()) {
            (Some(p), Some(n), None) => (
                "torsion",
                inputs(&[("p", p.to_string()), ("n", n.to_string())]),
                Output::Torsion(commands::torsion_output(*p, *n)?),
            ),
            (None, None, Some(&[p, q])) => (
                "torsion",
                inputs(&[("p", p.to_string()), ("q", q.to_string())]),
                Output::Torsion(commands::pq_torsion_output(p, q)?),
            ),
            _ => return Err(usage("torsion needs either --p P --n K or --pq P Q")),
        },
        Command::Pq { p, q } => {
            ("pq", inputs(&[("p", p.to_string()), ("q", q.to_string())]), Output::Pq(commands::pq_output(*p, *q)?))
        }
        Command::Verify { suite } => {
            let suites = verify::run_suites(suite).ok_or_else(|| {
                usage(format!("unknown suite {suite:?}; expected one of {} or all", SUITES.join(", ")))
            })?;
            let passed = suites.iter().all(|s| s.passed);
            ("verify", inputs(&[("suite", suite.clone())]), Output::Verify(VerifyOutput { suites, passed }))
        }
    };
    Ok(Report {
        command: command.to_string(),
        inputs,
        output,
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

fn pp_inputs(pp: &PrimePower) -> BTreeMap<String, String> {
    inputs(&[("p", pp.p.to_string()), ("n", pp.n.to_string())])
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs the command line, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json { to_json(&report) } else { render(&report) };
            let _ = out.write_all(text.as_bytes());
            match &report.output {
                Output::Verify(v) if !v.passed => 1,
                _ => 0,
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if f.code == 2 {
                let _ = writeln!(err, "run `modunits --help` for usage");
            }
            f.code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
