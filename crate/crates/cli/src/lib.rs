//! Command-line front end: moving-norm curves, horizons and operator classes
//! for matrix files, and the randomized verification suite.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 unreadable or
//! malformed input, 3 matrix shape error, 4 matrix not nonexpansive.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use movnorm::{
    classify, horizon, sample_curve, Error, Matrix, MovingNormCurve, TheoremReport, VerifyConfig,
};

#[derive(Debug, Parser)]
#[command(
    name = "movnorm",
    version,
    about = "Moving norms and horizons of square complex matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample m(λ) and am(λ) on a uniform grid and write CSV.
    Curve {
        matrix_file: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        lambda_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the horizon of a nonexpansive matrix.
    Horizon {
        matrix_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Report NE / monotone / FNE membership.
    Classify {
        matrix_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run every theorem check on random ensembles and write a JSON report.
    Verify {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 8])]
        dims: Vec<usize>,
        /// Trials per check and dimension, shared round-robin among the
        /// admissible ensembles.
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, env = "MOVNORM_SEED", default_value_t = 1)]
        seed: u64,
        /// Report file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, io::Error),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 2,
            CliError::Lib(e) => match e {
                Error::DimensionMismatch { .. } | Error::BadShape(_) => 3,
                Error::NotNonexpansive { .. } => 4,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    Ok(Matrix::from_json_str(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
    }
}

/// `lambda,m,am` rows in shortest round-trip decimal.
pub fn curve_csv(curve: &MovingNormCurve) -> String {
    let mut s = String::from("lambda,m,am\n");
    for i in 0..curve.len() {
        writeln!(
            s,
            "{},{},{}",
            curve.lambdas[i], curve.m_values[i], curve.am_values[i]
        )
        .unwrap();
    }
    s
}

pub fn reports_json(reports: &[TheoremReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Curve {
            matrix_file,
            lambda_max,
            steps,
            out,
        } => {
            let x = read_matrix(&matrix_file)?;
            let curve = sample_curve(&x, lambda_max, steps)?;
            emit(out.as_deref(), &curve_csv(&curve))?;
            Ok(0)
        }
        Command::Horizon { matrix_file, json } => {
            let x = read_matrix(&matrix_file)?;
            let h = horizon(&x)?;
            let text = if json {
                serde_json::to_string(&h).expect("serializes") + "\n"
            } else {
                format!(
                    "value {}\nbracket [{}, {}]\nflat_at_one {}\niterations {}\n",
                    h.value, h.bracket_lo, h.bracket_hi, h.flat_at_one, h.iterations
                )
            };
            emit(None, &text)?;
            Ok(0)
        }
        Command::Classify { matrix_file, json } => {
            let x = read_matrix(&matrix_file)?;
            let r = classify(&x);
            let text = if json {
                serde_json::to_string(&r).expect("serializes") + "\n"
            } else {
                let horizon = r.horizon.map_or("undefined".to_string(), |h| h.to_string());
                format!(
                    "ne {}\nmonotone {}\nfne {}\nfne_via_horizon {}\nnorm {}\nmin_sym_eig {}\nfne_gap {}\nhorizon {}\n",
                    r.ne, r.monotone, r.fne, r.fne_via_horizon, r.norm, r.min_sym_eig, r.fne_gap, horizon
                )
            };
            emit(None, &text)?;
            Ok(0)
        }
        Command::Verify {
            dims,
            trials,
            seed,
            out,
        } => {
            let config = VerifyConfig {
                dims,
                trials,
                seed,
                ..VerifyConfig::default()
            };
            let reports = movnorm::run_all(&config)?;
            emit(out.as_deref(), &reports_json(&reports))?;
            let mut failed = false;
            for r in &reports {
                failed |= !r.passed();
                eprintln!(
                    "{:<28} {} trials={} skipped={} failures={} worst={}",
                    r.check_id,
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.trials,
                    r.skipped,
                    r.failures,
                    r.worst_violation
                        .map_or("-".to_string(), |v| format!("{v:e}")),
                );
            }
            Ok(u8::from(failed))
        }
    }
}
