//! Command-line front end.
//!
//! Every command prints a single-line JSON [`RunRecord`] on stdout (sweeps
//! can print CSV instead). Exit codes: 0 success, 2 usage error, 3 a
//! numerical contract was violated, 4 internal error.

mod commands;
mod record;
pub mod sweep;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

pub use record::{timestamp, RunRecord, TOOL_VERSION};

use crate::gaussian::ComplexPoint;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Deviation between closed form and quadrature that a command tolerates.
pub const CONTRACT_TOLERANCE: f64 = 1e-6;

/// Largest `|ratio − 1|` accepted by `uncertainty`.
pub const UNCERTAINTY_TOLERANCE: f64 = 1e-9;

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "BEREZIN_SEED";

#[derive(Debug, Parser)]
#[command(name = "berezin", version, about = "Berezin quantization of Gaussian states on C^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form Berezin transform of a Gaussian, optionally checked by quadrature.
    #[command(allow_negative_numbers = true)]
    Transform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        /// Gauss–Hermite order per real axis for the quadrature check.
        #[arg(long, value_name = "M")]
        numeric: Option<usize>,
        /// Evaluation point: `re,im` per coordinate, coordinates separated by `;`.
        #[arg(long, value_name = "Z")]
        at: Option<String>,
    },
    /// Purity index of the transformed Gaussian.
    #[command(allow_negative_numbers = true)]
    Trace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        alpha: f64,
        /// Gauss–Hermite order per real axis; defaults to 80 for n = 1 and 32 for n = 2.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Uncertainty identity for the quantized Gaussian.
    #[command(allow_negative_numbers = true)]
    Uncertainty {
        #[arg(long)]
        lambda: f64,
        #[arg(long = "K", default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, default_value_t = 80)]
        order: usize,
    },
    /// Evaluate a quantity over a parameter grid.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(value_enum)]
        quantity: sweep::Quantity,
        /// Parameter being varied.
        #[arg(long, value_enum, default_value_t = sweep::Axis::Alpha)]
        over: sweep::Axis,
        /// Explicit comma-separated values.
        #[arg(long, conflicts_with = "logspace")]
        values: Option<String>,
        /// `start,stop,count`: `count` powers of ten from 10^start to 10^stop.
        #[arg(long)]
        logspace: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Write CSV to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print CSV on stdout instead of the JSON record.
        #[arg(long)]
        csv: bool,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// How a command ended, beyond its printed output.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    /// The record is still printed.
    Contract(Box<RunRecord>, String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::DimensionMismatch { .. } | Error::NotHolomorphic(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Output of a command that completed.
pub(crate) enum Output {
    Record(RunRecord),
    /// Verification: record plus a human-readable table for stderr.
    Table(RunRecord, String, bool),
    Csv(String),
}

/// Parses `re,im;re,im;…` into a point.
pub fn parse_point(s: &str) -> Result<ComplexPoint, Error> {
    let coords = s
        .split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            let [re, im] = parts.as_slice() else {
                return Err(Error::param("at", format!("expected `re,im`, got `{pair}`")));
            };
            let re: f64 = re.parse().map_err(|_| Error::param("at", format!("bad number `{re}`")))?;
            let im: f64 = im.parse().map_err(|_| Error::param("at", format!("bad number `{im}`")))?;
            Ok(Complex64::new(re, im))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ComplexPoint::new(coords).map_err(|e| Error::param("at", e.to_string()))
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let outcome = commands::dispatch(cli.command);
    let written = match outcome {
        Ok(Output::Record(rec)) => writeln!(out, "{}", rec.to_json()).map(|_| EXIT_OK),
        Ok(Output::Csv(csv)) => write!(out, "{csv}").map(|_| EXIT_OK),
        Ok(Output::Table(rec, table, passed)) => write!(err, "{table}")
            .and_then(|_| writeln!(out, "{}", rec.to_json()))
            .map(|_| if passed { EXIT_OK } else { EXIT_CONTRACT }),
        Err(Failure::Contract(rec, msg)) => writeln!(out, "{}", rec.to_json())
            .and_then(|_| writeln!(err, "contract violation: {msg}"))
            .map(|_| EXIT_CONTRACT),
        Err(Failure::Usage(msg)) => writeln!(err, "error: {msg}").map(|_| EXIT_USAGE),
        Err(Failure::Internal(msg)) => writeln!(err, "internal error: {msg}").map(|_| EXIT_INTERNAL),
    };
    written.unwrap_or(EXIT_INTERNAL)
}

/// Entry point for the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
