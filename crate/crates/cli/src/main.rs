//! `acgeom` command-line tool.
//!
//! Exit codes: 0 success, 1 domain error, 2 malformed input. Errors are
//! written to stderr as `{"error": <name>, "message": <text>}`.

mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "acgeom",
    version,
    about = "Finite spectral triples, two-sheet causality and dispersion checks"
)]
struct Cli {
    /// Numerical tolerance passed to the library (each command has its own default).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for randomized multi-start searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of a finite triple.
    Validate {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Spectral distance between two states (basis index or comma-separated weights).
    Distance {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        state_a: String,
        #[arg(long)]
        state_b: String,
        /// Also run the grid oracle with this step and report the gap.
        #[arg(long)]
        oracle_step: Option<f64>,
    },
    /// Causal relation between two pure or mixed two-sheet states.
    Causal {
        #[arg(long)]
        input: PathBuf,
    },
    /// Causal-cone membership of an affine function or two-sheet element.
    Cone {
        #[arg(long)]
        input: PathBuf,
    },
    /// CSV sampling of which cross-sheet events can be reached from the origin.
    LightconeScan {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 4.0)]
        t_max: f64,
        #[arg(long, default_value_t = 4.0)]
        r_max: f64,
        #[arg(long, default_value_t = 40)]
        steps: usize,
    },
    /// Classify a plane-wave mode by its Krein ratio.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Higgs inner fluctuation of the electroweak triple and its trace.
    Fluctuate {
        #[arg(long)]
        input: PathBuf,
    },
    /// On-shell energy and residual under the fluctuated operator.
    EwDispersion {
        #[arg(long)]
        input: PathBuf,
    },
}

pub struct Settings {
    pub tolerance: Option<f64>,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Domain(acgeom::Error),
}

impl From<acgeom::Error> for CliError {
    fn from(e: acgeom::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn report(&self) -> (u8, serde_json::Value) {
        match self {
            CliError::Malformed(msg) => (2, json!({ "error": "MalformedInput", "message": msg })),
            CliError::Domain(e) => (1, json!({ "error": e.name(), "message": e.to_string() })),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let settings = Settings {
        tolerance: cli.tolerance,
        seed: cli.seed,
    };
    if let Some(tol) = settings.tolerance {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(CliError::Malformed(format!(
                "--tolerance must be a nonnegative number, got {tol}"
            )));
        }
    }
    let doc = match &cli.command {
        Command::Validate { triple } => commands::validate(&settings, triple)?,
        Command::Distance {
            triple,
            state_a,
            state_b,
            oracle_step,
        } => commands::distance(&settings, triple, state_a, state_b, *oracle_step)?,
        Command::Causal { input } => commands::causal(&settings, input)?,
        Command::Cone { input } => commands::cone(&settings, input)?,
        Command::LightconeScan {
            m,
            t_max,
            r_max,
            steps,
        } => return commands::lightcone(&settings, *m, *t_max, *r_max, *steps),
        Command::Classify { input } => commands::classify(&settings, input)?,
        Command::Fluctuate { input } => commands::fluctuate(input)?,
        Command::EwDispersion { input } => commands::ew_dispersion(input)?,
    };
    let mut text = serde_json::to_string(&doc).expect("JSON values serialize");
    text.push('\n');
    Ok(text)
}

fn emit_error(code: u8, doc: serde_json::Value) -> ExitCode {
    eprintln!("{doc}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            return emit_error(
                2,
                json!({ "error": "MalformedInput", "message": message.trim_end() }),
            );
        }
    };
    match run(&cli) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => emit_error(
                    2,
                    json!({ "error": "OutputError", "message": e.to_string() }),
                ),
            }
        }
        Err(e) => {
            let (code, doc) = e.report();
            emit_error(code, doc)
        }
    }
}
