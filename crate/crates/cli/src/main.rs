//! Command-line entry point: verification, effective constants, level
//! corrections, spectroscopy bounds, and the numerical oracle scorecard.
//!
//! All structured output is deterministic: sorted keys, floats at 12
//! significant digits. Exit code 0 means every check in the invoked
//! pipeline passed; 1 is a failed check or computation error; 2 a usage
//! error.

mod pipelines;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ncps",
    about = "Noncommutative phase-space toolkit: exact algebra verification and spectroscopy",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Machine-verify the commutator algebra for N symbolic particles
    Verify(VerifyArgs),
    /// Effective noncommutativity constants of a composite system
    Effective(EffectiveArgs),
    /// Perturbative level corrections for a two-body Coulomb system
    Correct(CorrectArgs),
    /// Noncommutativity bounds from spectroscopic measurement records
    Bounds(BoundsArgs),
    /// Numerical validation scorecard (grid oracles and the toy model)
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecipeArg {
    Exact,
    Paper,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Number of symbolic particles (1..=4; larger systems grow
    /// combinatorially and need --allow-large)
    #[arg(long, default_value_t = 2)]
    particles: u32,
    /// Permit more than four particles
    #[arg(long, default_value_t = false)]
    allow_large: bool,
}

#[derive(Args)]
pub struct EffectiveArgs {
    /// Comma-separated particle masses in kg
    #[arg(long, value_delimiter = ',', required = true)]
    pub masses: Vec<f64>,
    /// Mass-condition constant gamma_t (kg); requires --alpha-tilde
    #[arg(long, requires = "alpha_tilde", conflicts_with_all = ["c_theta", "c_eta"])]
    pub gamma_tilde: Option<f64>,
    /// Mass-condition constant alpha_t (1/kg)
    #[arg(long, requires = "gamma_tilde")]
    pub alpha_tilde: Option<f64>,
    /// Explicit per-particle c_theta list
    #[arg(long, value_delimiter = ',', requires = "c_eta")]
    pub c_theta: Option<Vec<f64>>,
    /// Explicit per-particle c_eta list
    #[arg(long, value_delimiter = ',', requires = "c_theta")]
    pub c_eta: Option<Vec<f64>>,
}

#[derive(Args)]
pub struct CorrectArgs {
    /// Atom preset: hydrogen | muonic_hydrogen | antiprotonic_helium
    #[arg(long, conflicts_with_all = ["masses", "mu", "kappa", "z_eff"])]
    pub atom: Option<String>,
    /// Two comma-separated masses in kg
    #[arg(long, value_delimiter = ',', conflicts_with = "mu")]
    pub masses: Option<Vec<f64>>,
    /// Reduced mass in kg (alternative to --masses)
    #[arg(long)]
    pub mu: Option<f64>,
    /// Total mass in kg (with --mu; used for center-of-mass constants)
    #[arg(long, requires = "mu")]
    pub total_mass: Option<f64>,
    /// Coulomb coupling kappa in J m (defaults to Z_eff e^2/(4 pi eps0))
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Effective nuclear charge (default 1)
    #[arg(long)]
    pub z_eff: Option<f64>,
    /// Length-scale recipe for atom presets
    #[arg(long, value_enum, default_value_t = RecipeArg::Exact)]
    pub recipe: RecipeArg,
    /// Mass-condition constant gamma_t; requires --alpha-tilde
    #[arg(long, requires = "alpha_tilde", conflicts_with_all = ["c_theta_r", "c_eta_r", "c_eta_c"])]
    pub gamma_tilde: Option<f64>,
    /// Mass-condition constant alpha_t
    #[arg(long, requires = "gamma_tilde")]
    pub alpha_tilde: Option<f64>,
    /// Explicit relative c_theta^r
    #[arg(long, requires = "c_eta_r")]
    pub c_theta_r: Option<f64>,
    /// Explicit relative c_eta^r
    #[arg(long, requires = "c_theta_r")]
    pub c_eta_r: Option<f64>,
    /// Explicit center-of-mass c_eta^c (default 0)
    #[arg(long)]
    pub c_eta_c: Option<f64>,
    /// States as n:l pairs, e.g. 1:0,2:1,3:2
    #[arg(long, required = true)]
    pub states: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Constants table override (JSON)
    #[arg(long)]
    pub constants: Option<PathBuf>,
}

#[derive(Args)]
pub struct BoundsArgs {
    /// Measurement records file (JSON array)
    #[arg(long, required = true)]
    pub data: PathBuf,
    /// Atom preset override (defaults to each record's atom field)
    #[arg(long)]
    pub atoms: Option<String>,
    /// Length-scale recipe override
    #[arg(long, value_enum)]
    pub recipe: Option<RecipeArg>,
    /// Fraction of the error budget assigned to the theta channel
    #[arg(long, default_value_t = 0.5)]
    pub split_fraction: f64,
    /// Constants table override (JSON)
    #[arg(long)]
    pub constants: Option<PathBuf>,
}

#[derive(Args)]
pub struct OracleArgs {
    /// Skip the slowest checks (the dense toy-model sweep)
    #[arg(long, default_value_t = false)]
    fast: bool,
}

pub enum CliError {
    Usage(String),
    Computation(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn computation(msg: impl Into<String>) -> Self {
        CliError::Computation(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => pipelines::run_verify(a.particles, a.allow_large),
        Command::Effective(a) => pipelines::run_effective(&a),
        Command::Correct(a) => pipelines::run_correct(&a),
        Command::Bounds(a) => pipelines::run_bounds(&a),
        Command::Oracle(a) => pipelines::run_oracle(a.fast),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
