//! The `ffiwa` command line: argument parsing, config merging, dispatch and
//! output.
//!
//! Results are printed on standard output as JSON (default) or CSV. A module
//! error exits with code 1 and a structured error object; a malformed config
//! or command line exits with code 2.

pub mod args;
mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::Error;
pub use args::ConfigError;
use args::{DrinfeldArgs, DualArgs, IwasawaArgs, TowerArgs, ZetaArgs};
pub use report::{Format, Report};

/// Exact computations for Drinfeld modules and Iwasawa theory of constant
/// Z_p-extensions of F_q(T).
#[derive(Parser, Debug)]
#[command(name = "ffiwa", version, about)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for randomized self-checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// JSON file with the command's inputs; flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Drinfeld modules: reduction, torsion and Frobenius data
    #[command(subcommand)]
    Drinfeld(DrinfeldCommand),
    /// Places in the constant Z_p-tower
    #[command(subcommand)]
    Tower(TowerCommand),
    /// L-polynomials and class numbers
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// μ and λ invariants and growth of Λ-modules
    #[command(subcommand)]
    Iwasawa(IwasawaCommand),
    /// Pontryagin duality and the λ-bound
    #[command(subcommand)]
    Dual(DualCommand),
}

#[derive(Subcommand, Debug)]
pub enum DrinfeldCommand {
    /// Rank, bad places and homomorphism self-checks of φ
    Inspect(DrinfeldArgs),
    /// Reduction type and reduced φ_T at --place
    Reduce(DrinfeldArgs),
    /// Reduced π-torsion at --place as an F_π-vector space
    Torsion(DrinfeldArgs),
    /// Frobenius at --place on the reduced π-torsion and its fixed dimension
    H0(DrinfeldArgs),
    /// The place set S(F): bad places, π and ∞
    SelmerSet(DrinfeldArgs),
}

#[derive(Subcommand, Debug)]
pub enum TowerCommand {
    /// Splitting of --place at levels 0..=levels
    Split(TowerArgs),
    /// δ_n for n = 0..=levels and its stabilization
    Delta(TowerArgs),
    /// The level from which every place of S is inert
    InertLevel(TowerArgs),
}

#[derive(Subcommand, Debug)]
pub enum ZetaCommand {
    /// L-polynomial from point counts or from an affine model
    Lpoly(ZetaArgs),
    /// Points over F_{q^k} of an affine model plus the correction at infinity
    Count(ZetaArgs),
    /// Class numbers h_n and exponents e_n along the tower, with the fit
    Tower(ZetaArgs),
    /// Upper bounds for the exponents of the S-class groups
    Bound(ZetaArgs),
}

#[derive(Subcommand, Debug)]
pub enum IwasawaCommand {
    /// μ and λ of a polynomial in Z_p[[T]]
    MuLambda(IwasawaArgs),
    /// Exponents e_n of an elementary module
    Growth(IwasawaArgs),
    /// Fit e_n = λn + μp^n + ν
    Fit(IwasawaArgs),
}

#[derive(Subcommand, Debug)]
pub enum DualCommand {
    /// Descriptor of the dual of a cofinitely generated module
    Dual(DualArgs),
    /// Compare the dual of M[𝔭^n] with N/𝔭^n N
    TorsionQuotient(DualArgs),
    /// Finiteness of M[𝔭] against the structure of the dual, and λ ≤ dim M[𝔭]
    Finiteness(DualArgs),
    /// λ ≤ sel_dim + Σ dim H^0 with per-term provenance
    LambdaBound(DualArgs),
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Why a command failed.
#[derive(Debug)]
pub(crate) enum Failure {
    Config(ConfigError),
    Module { error: Error, input: Value },
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

/// A successful command's output.
pub(crate) struct Success {
    pub command: &'static str,
    pub anchor: &'static str,
    pub input: Value,
    pub report: Report,
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (config, format, seed) = match load_config(&cli) {
        Ok(loaded) => loaded,
        Err(e) => return failure(cli.format.unwrap_or(Format::Json), Failure::Config(e)),
    };
    match commands::dispatch(&cli.command, &config, seed) {
        Ok(done) => Outcome {
            code: 0,
            stdout: match format {
                Format::Json => done.report.to_json(done.command, done.anchor, seed, &done.input),
                Format::Csv => done.report.to_csv(),
            },
            stderr: String::new(),
        },
        Err(f) => failure(format, f),
    }
}

/// The config object with `format` and `seed` removed, and those two
/// settings resolved against the flags.
fn load_config(cli: &Cli) -> Result<(Map<String, Value>, Format, Option<u64>), ConfigError> {
    let mut config = match &cli.config {
        None => Map::new(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::new(None, format!("cannot read {}: {e}", path.display())))?;
            match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(m)) => m,
                Ok(_) => return Err(ConfigError::new(None, "config must be a JSON object")),
                Err(e) => {
                    return Err(ConfigError::new(
                        None,
                        format!("invalid JSON in {}: {e}", path.display()),
                    ))
                }
            }
        }
    };
    let format_value = config.remove("format");
    let seed_value = config.remove("seed");
    let format = match (cli.format, format_value) {
        (Some(f), _) => f,
        (None, None) => Format::Json,
        (None, Some(v)) => serde_json::from_value(v)
            .map_err(|_| ConfigError::new(Some("format"), "field `format` must be \"json\" or \"csv\""))?,
    };
    let seed = match (cli.seed, seed_value) {
        (Some(s), _) => Some(s),
        (None, None) => None,
        (None, Some(v)) => Some(
            v.as_u64()
                .ok_or_else(|| ConfigError::new(Some("seed"), "field `seed` must be a non-negative integer"))?,
        ),
    };
    Ok((config, format, seed))
}

fn failure(format: Format, f: Failure) -> Outcome {
    let (code, kind, message, input) = match f {
        Failure::Config(e) => (2, "config", e.message, json!(e.field)),
        Failure::Module { error, input } => {
            let input = match &error {
                Error::Parse { input, .. } => json!(input),
                _ => input,
            };
            (1, error.kind(), error.to_string(), input)
        }
    };
    let stdout = match format {
        Format::Json => {
            let doc = json!({
                "schema": report::SCHEMA,
                "error": { "kind": kind, "message": message, "input": input },
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let input = match &input {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record(["kind", "message", "input"]).expect("in-memory write");
            w.write_record([kind, message.as_str(), input.as_str()])
                .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
        }
    };
    Outcome {
        code,
        stdout,
        stderr: format!("ffiwa: {kind}: {message}\n"),
    }
}
