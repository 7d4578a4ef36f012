//! Command-line front end: argument definitions, run configuration, the counts
//! file schema and the five commands. The `qreal` binary only calls [`run`].

mod commands;
mod counts_file;
mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use commands::{
    cmd_bounds, cmd_exact, cmd_ingest, cmd_sample, cmd_verify_gates, ingest_records, BoundsReport,
    NoSignalingSummary, PartialEntry, RunReport, VerifyReport,
};
pub use counts_file::{CountsFile, RecordSpec, SettingSpec, BIT_ORDER};
pub use format::{fmt15, round15, terms_csv, to_json};

use crate::bounds::{CLASSICAL_BOUND, REAL_BOUND};
use crate::qsim::{NoiseModel, ReadoutError};
use crate::witness::Permutation;

pub const EXIT_OK: i32 = 0;
/// `F` at or below the reference bound, or a failed gate identity.
pub const EXIT_NOT_ABOVE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Computation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Computation(_) | CliError::Io(_) => EXIT_COMPUTATION,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sample,
    Ingest,
}

/// Everything needed to reproduce a witness run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub noise: NoiseModel,
    pub native: bool,
    pub permutations: Vec<Permutation>,
    pub input: Option<PathBuf>,
    /// Not serialized: artifacts must not depend on where they are written.
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    /// Reference value for the σ-distance and the exit code.
    pub bound: f64,
}

impl RunConfig {
    pub fn exact() -> Self {
        Self {
            mode: Mode::Exact,
            shots: None,
            seed: None,
            noise: NoiseModel::ideal(),
            native: false,
            permutations: Permutation::ALL.to_vec(),
            input: None,
            out: None,
            bound: REAL_BOUND,
        }
    }

    pub fn sample(shots: u64, seed: u64) -> Self {
        Self {
            mode: Mode::Sample,
            shots: Some(shots),
            seed: Some(seed),
            ..Self::exact()
        }
    }

    pub fn ingest(input: PathBuf) -> Self {
        Self {
            mode: Mode::Ingest,
            input: Some(input),
            ..Self::exact()
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qreal", version, about = "Three-party witness separating real and complex quantum theory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the machine-readable report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory for result files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact output distributions of the witness circuits.
    Exact(CircuitArgs),
    /// Sampled counts for every setting.
    Sample(SampleArgs),
    /// Evaluate a counts file.
    Ingest(IngestArgs),
    /// Classical, real and complex reference values.
    Bounds(BoundsArgs),
    /// Check the gate decompositions and the six permutation gates.
    VerifyGates(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Transpile to {X, X+, Z(θ), ECR↓} before simulating.
    #[arg(long)]
    pub native: bool,
    /// Comma-separated permutations, e.g. `123,321` (default: all six).
    #[arg(long, value_delimiter = ',')]
    pub permutations: Vec<Permutation>,
    /// Two-qubit depolarizing probability after every two-qubit gate.
    #[arg(long = "noise-2q", default_value_t = 0.0)]
    pub noise_2q: f64,
    /// Symmetric readout flip probability on every wire.
    #[arg(long = "noise-readout", default_value_t = 0.0)]
    pub noise_readout: f64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// Shots per setting.
    #[arg(long, default_value_t = 20_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `real` (6√6), `classical` (12) or a number.
    #[arg(long, default_value = "real")]
    pub bound: BoundChoice,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    pub path: PathBuf,
    /// Effective shots per setting for the error formula.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub permutations: Vec<Permutation>,
    #[arg(long, default_value = "real")]
    pub bound: BoundChoice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Classical,
    Complex,
    RealQuadratic,
    RealCubic,
    SampleReal,
    SampleComplex,
    Certificate,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    pub kind: BoundKind,
    /// JSON certificate for `certificate`.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Perturbation size for `sample-complex`.
    #[arg(long, default_value_t = 0.02)]
    pub scale: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Negative control: substitute CR+ for CR- in the ECR decomposition.
    #[arg(long, hide = true)]
    pub inject_cr_sign_error: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundChoice(pub f64);

impl std::str::FromStr for BoundChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(Self(REAL_BOUND)),
            "classical" => Ok(Self(CLASSICAL_BOUND)),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Self)
                .ok_or_else(|| format!("expected `real`, `classical` or a number, got {s:?}")),
        }
    }
}

impl CircuitArgs {
    fn noise(&self) -> Result<NoiseModel, CliError> {
        let noise = NoiseModel::depolarizing(self.noise_2q).with_readout(ReadoutError::symmetric(self.noise_readout));
        noise.validate().map_err(|e| CliError::Validation(e.to_string()))?;
        Ok(noise)
    }

    fn permutations(&self) -> Vec<Permutation> {
        permutations_or_all(&self.permutations)
    }
}

fn permutations_or_all(p: &[Permutation]) -> Vec<Permutation> {
    if p.is_empty() {
        Permutation::ALL.to_vec()
    } else {
        p.to_vec()
    }
}

/// A rendered command result: the report, a summary and the exit code.
pub struct Rendered {
    pub json: String,
    pub summary: String,
    pub files: Vec<(String, String)>,
    pub exit_code: i32,
}

fn write_files(out: &Option<PathBuf>, files: &[(String, String)]) -> Result<(), CliError> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        for (name, body) in files {
            std::fs::write(dir.join(name), body)?;
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Exact(args) => {
            let mut config = RunConfig::exact();
            config.native = args.native;
            config.permutations = args.permutations();
            config.noise = args.noise()?;
            config.out = cli.out.clone();
            commands::render_run(&cmd_exact(&config)?)
        }
        Command::Sample(args) => {
            let mut config = RunConfig::sample(args.shots, args.seed);
            config.native = args.circuit.native;
            config.permutations = args.circuit.permutations();
            config.noise = args.circuit.noise()?;
            config.out = cli.out.clone();
            config.bound = args.bound.0;
            commands::render_run(&cmd_sample(&config)?)
        }
        Command::Ingest(args) => {
            let mut config = RunConfig::ingest(args.path.clone());
            config.shots = args.shots;
            config.permutations = permutations_or_all(&args.permutations);
            config.out = cli.out.clone();
            config.bound = args.bound.0;
            commands::render_run(&cmd_ingest(&config)?)
        }
        Command::Bounds(args) => commands::render_bounds(&cmd_bounds(args)?),
        Command::VerifyGates(args) => commands::render_verify(&cmd_verify_gates(args.inject_cr_sign_error)?),
    }
}

/// Parse `args` (including the program name) and execute; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = dispatch(&cli).and_then(|r| {
        write_files(&cli.out, &r.files)?;
        Ok(r)
    });
    match outcome {
        Ok(r) => {
            let text = if cli.json { &r.json } else { &r.summary };
            if stdout.write_all(text.as_bytes()).is_err() {
                return EXIT_COMPUTATION;
            }
            r.exit_code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
