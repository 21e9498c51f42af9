//! `coarse-embed` command-line tool.
//!
//! Exit codes: 0 pass, 1 fail (definiteness refusal or bound violation),
//! 2 input or usage error.

// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod bounds;
mod commands;
mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(coarse_embed::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<coarse_embed::Error> for CliError {
    fn from(e: coarse_embed::Error) -> Self {
        CliError::Core(e)
    }
}

/// Command outcome: pass or fail. Errors map to exit code 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Parser)]
#[command(
    name = "coarse-embed",
    version,
    about = "Kernel definiteness tests and Hilbert-space embeddings of finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// n×n matrix CSV
    Matrix,
    /// "n dim" header followed by coordinate rows
    Points,
}

impl InputFormat {
    fn name(self) -> &'static str {
        match self {
            InputFormat::Matrix => "matrix",
            InputFormat::Points => "points",
        }
    }
}

#[derive(Debug, Args)]
pub struct KernelInput {
    /// Input CSV file
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "matrix")]
    pub format: InputFormat,
    /// ℓ_p exponent used to build distances from points (0 < p ≤ 2)
    #[arg(long)]
    pub p: Option<f64>,
    /// Raise distances to this power (points default: 2)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Absolute tolerance (default 1e-9 · max(1, max |entry|))
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print a JSON report
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive definiteness test
    CheckPd(KernelInput),
    /// Negative definiteness test on mean-zero coefficients
    CheckNd(KernelInput),
    /// Realize a normalized negative definite kernel as squared distances
    EmbedSchoenberg {
        #[command(flatten)]
        kernel: KernelInput,
        /// Base point mapped to the origin
        #[arg(long, default_value_t = 0)]
        base: usize,
        /// Coordinates CSV to write
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Embed an ℓ_p point cloud with image distances (∑|Δ|^p)^{1/2}
    Snowflake {
        /// Points CSV
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide isometric embeddability into Hilbert space (d² negative definite)
    IsometricTest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "matrix")]
        format: InputFormat,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Empirical compression/expansion moduli and bound verification
    Moduli {
        /// Metric (matrix CSV) or points with --format points
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "matrix")]
        format: InputFormat,
        #[arg(long)]
        p: Option<f64>,
        /// Image coordinates (points CSV)
        #[arg(long)]
        coords: PathBuf,
        /// Lower bound: t^b, a*t+b or @breakpoints.csv
        #[arg(long)]
        rho1: Option<String>,
        /// Upper bound: t^b, a*t+b or @breakpoints.csv
        #[arg(long)]
        rho2: Option<String>,
        /// Write t,compression,expansion CSV here
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Elementwise kernel transforms
    Transform {
        /// Matrix CSV
        #[arg(long)]
        input: PathBuf,
        /// exp(-t·N)
        #[arg(long = "exp", value_name = "T", conflicts_with = "power", required_unless_present = "power")]
        exp: Option<f64>,
        /// N^alpha
        #[arg(long = "power", value_name = "ALPHA")]
        power: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check x^α = c_α ∫ (1 − e^{−tx}) t^{−α−1} dt numerically
    LevyCheck {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-8)]
        lower: f64,
        #[arg(long, default_value_t = 1e4)]
        upper: f64,
        #[arg(long, default_value_t = 20_000)]
        nodes: usize,
        /// Relative error threshold for the verdict
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Seeded instance generator
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Cloud,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Distribution {
    Uniform,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Topology {
    Random,
    Path,
    Star,
    Cycle,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Emit the ℓ_p distance matrix of the cloud instead of its points
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "uniform")]
    pub dist: Distribution,
    #[arg(long, value_enum, default_value = "random")]
    pub topology: Topology,
    /// Probability of each extra edge for random graphs
    #[arg(long, default_value_t = 0.1)]
    pub edge_prob: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::CheckPd(k) => commands::check_definite(k, commands::Definiteness::Positive),
        Command::CheckNd(k) => commands::check_definite(k, commands::Definiteness::Negative),
        Command::EmbedSchoenberg { kernel, base, output } => commands::embed_schoenberg(kernel, base, output),
        Command::Snowflake { input, p, tol, output, json } => commands::snowflake(input, p, tol, output, json),
        Command::IsometricTest { input, format, p, tol, output, json } => {
            commands::isometric_test(input, format, p, tol, output, json)
        }
        Command::Moduli { input, format, p, coords, rho1, rho2, plot, json } => {
            commands::moduli(commands::ModuliArgs { input, format, p, coords, rho1, rho2, plot, json })
        }
        Command::Transform { input, exp, power, output } => commands::transform(input, exp, power, output),
        Command::LevyCheck { x, alpha, lower, upper, nodes, tol, json } => {
            commands::levy_check(x, alpha, coarse_embed::kernels::QuadratureParams { lower, upper, nodes }, tol, json)
        }
        Command::Gen(args) => commands::generate(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
