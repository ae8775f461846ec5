//! Command-line front end: reads functions from JSON files, runs the
//! minimality and extremality tests, and writes reports, witnesses and plots.
//!
//! Exit codes: 0 for a positive verdict (minimal, extreme) or a successful
//! conversion, 1 for a negative verdict, 2 for unreadable or invalid input.

pub mod plot;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use infgroup::extremality::{coverage_components, is_extreme};
use infgroup::json::{finite_from_json, finite_to_json, function_from_json, function_to_json};
use infgroup::library::{gmi, three_slope, ThreeSlopeInput};
use infgroup::minimality::check_minimality;
use infgroup::{PwlPeriodic, Scalar};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: infgroup::Error },
    #[error("{0}")]
    Invalid(#[from] infgroup::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "infgroup", version, about = "Exact minimality and extremality tests for periodic piecewise linear functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the vertex test; exit 0 if minimal, 1 if not.
    Minimal {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide extremality of a minimal function; exit 0 if extreme, 1 if not.
    Extreme {
        input: PathBuf,
        /// Where to write the two perturbed functions when not extreme.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Covered intervals and the components of the uncovered ones.
    Coverage {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Emit a built-in function.
    Builtin {
        #[command(subcommand)]
        which: Builtin,
    },
    /// Restrict a function to the finite group (1/N)Z / Z.
    Restrict {
        input: PathBuf,
        #[arg(long)]
        denominator: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Continuous interpolation of a finite-group function.
    Interpolate {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Plot the graph as SVG or CSV, chosen by the output extension.
    Plot {
        input: PathBuf,
        /// Also draw the two-dimensional complex with additive faces shaded.
        #[arg(long)]
        complex: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Builtin {
    /// Gomory mixed-integer function with the given f.
    Gmi {
        #[arg(long)]
        f: Scalar,
        #[command(flatten)]
        out: Output,
    },
    /// Three-slope function with two shift parameters.
    ThreeSlope {
        #[arg(long)]
        f: Scalar,
        /// Total length of the upward pieces.
        #[arg(long)]
        d1: Scalar,
        /// Total length of the downward pieces.
        #[arg(long)]
        d3: Scalar,
        /// Length of the leading upward piece.
        #[arg(long)]
        s: Scalar,
        #[arg(long)]
        delta1: Scalar,
        #[arg(long, allow_hyphen_values = true)]
        delta2: Scalar,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_function(path: &Path) -> Result<PwlPeriodic, CliError> {
    function_from_json(&read(path)?).map_err(|source| CliError::Input { path: path.into(), source })
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn emit(out: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Minimal { input, out } => {
            let report = check_minimality(&read_function(&input)?);
            emit(&out, &json(&report), stdout)?;
            Ok(if report.is_minimal() { 0 } else { 1 })
        }
        Command::Extreme { input, witness, out } => {
            let verdict = is_extreme(&read_function(&input)?)?;
            if let (Some(path), Some(w)) = (&witness, &verdict.witness) {
                fs::write(path, json(w)).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            emit(&out, &json(&verdict), stdout)?;
            Ok(if verdict.is_extreme() { 0 } else { 1 })
        }
        Command::Coverage { input, out } => {
            let report = coverage_components(&read_function(&input)?)?;
            emit(&out, &json(&report), stdout)?;
            Ok(0)
        }
        Command::Builtin { which: Builtin::Gmi { f, out } } => {
            emit(&out, &(function_to_json(&gmi(&f)?) + "\n"), stdout)?;
            Ok(0)
        }
        Command::Builtin { which: Builtin::ThreeSlope { f, d1, d3, s, delta1, delta2, out } } => {
            let input = ThreeSlopeInput { f, up_total: d1, down_total: d3, head: s, shifts: [delta1, delta2] };
            let (pi, _) = three_slope(input)?;
            emit(&out, &(function_to_json(&pi) + "\n"), stdout)?;
            Ok(0)
        }
        Command::Restrict { input, denominator, out } => {
            let g = read_function(&input)?.restrict(denominator)?;
            emit(&out, &(finite_to_json(&g) + "\n"), stdout)?;
            Ok(0)
        }
        Command::Interpolate { input, out } => {
            let g = finite_from_json(&read(&input)?).map_err(|source| CliError::Input { path: input.clone(), source })?;
            emit(&out, &(function_to_json(&g.interpolate()) + "\n"), stdout)?;
            Ok(0)
        }
        Command::Plot { input, complex, output } => {
            let pi = read_function(&input)?;
            let text = match output.extension().and_then(|e| e.to_str()) {
                Some("svg") => plot::to_svg(&pi, complex),
                Some("csv") => plot::to_csv(&pi, complex),
                _ => return Err(CliError::Usage(format!("{}: output must end in .svg or .csv", output.display()))),
            };
            emit(&Output { output: Some(output) }, &text, stdout)?;
            Ok(0)
        }
    }
}

/// Runs one command, writing results to `stdout` and diagnostics to `stderr`.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                return 2;
            }
            let _ = write!(stdout, "{rendered}");
            return 0;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
