mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grovlab_core::{Error, Exec};

use input::StateArgs;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    NotConverged,
    Infeasible(String),
    Io(String),
    Core(Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::NotConverged => 3,
            CliError::Infeasible(_) => 4,
            CliError::Io(_) => 5,
            CliError::Core(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "invalid input: {m}"),
            CliError::NotConverged => write!(f, "solver did not converge"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::QubitCount { .. }
            | Error::InvalidLength(_)
            | Error::DimensionMismatch { .. }
            | Error::QubitOutOfRange { .. }
            | Error::InvalidQubitSet(_)
            | Error::NotNormalized(_)
            | Error::InvalidArgument(_)
            | Error::OutOfDomain(_)
            | Error::EmptyGrid => CliError::Parse(e.to_string()),
            Error::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            _ => CliError::Core(e),
        }
    }
}

#[derive(Parser)]
#[command(name = "grovlab", version, about = "Groverian P_max, three-qubit teleportation and superdense coding")]
struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, env = "GROVLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Omit the timestamp so identical runs give identical bytes
    #[arg(long, global = true)]
    reproducible: bool,
    /// Write results here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run restarts and grid points on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal success probability over product states
    Pmax(PmaxArgs),
    /// Build and simulate perfect teleportation with one resource qubit at Bob
    Teleport(TeleportArgs),
    /// Superdense coding check with Alice holding one resource qubit
    Dense(DenseArgs),
    /// Evaluate a family grid
    Scan(ScanArgs),
    /// P_max along b = κa, c = κ²a
    Sweep(SweepArgs),
    /// Family scans plus the random counterexample search
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Alternating,
    Reduced,
    Bloch,
    /// Every applicable method, with pairwise differences
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
pub struct PmaxArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Alternating)]
    method: MethodArg,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
}

#[derive(Args)]
pub struct TeleportArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, default_value_t = 2)]
    bob: usize,
    /// Input qubit `α,β` in complex syntax
    #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
    input: Option<String>,
    /// Fresh random input for every trial (the default without --input)
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Exit with status 4 when the resource cannot teleport
    #[arg(long)]
    require_feasible: bool,
}

#[derive(Args)]
pub struct DenseArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, default_value_t = 0)]
    alice: usize,
}

#[derive(Args)]
pub struct ScanArgs {
    /// A family name, or `all`
    #[arg(long, default_value = "all")]
    family: String,
    /// Points per parameter
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Skip the reduced and Bloch cross-checks
    #[arg(long)]
    no_cross_check: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
pub struct SweepArgs {
    /// `min:max:steps`
    #[arg(long, default_value = "0.5:1.3:161")]
    kappa: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 21)]
    grid: usize,
    /// Haar-random states in the search
    #[arg(long, default_value_t = 10_000)]
    haar: usize,
    /// Random teleportation-feasible states in the search
    #[arg(long, default_value_t = 1_000)]
    feasible: usize,
    /// Bisection probes onto P_max = 1/2
    #[arg(long, default_value_t = 16)]
    probes: usize,
}

pub struct Global {
    pub seed: u64,
    pub reproducible: bool,
    pub exec: Exec,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = Global {
        seed: cli.seed,
        reproducible: cli.reproducible,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let (bytes, status) = match &cli.command {
        Command::Pmax(a) => commands::pmax(a, &g)?,
        Command::Teleport(a) => commands::teleport(a, &g)?,
        Command::Dense(a) => commands::dense(a, &g)?,
        Command::Scan(a) => commands::scan(a, &g)?,
        Command::Sweep(a) => commands::sweep(a, &g)?,
        Command::Report(a) => commands::report(a, &g)?,
    };
    output::emit(cli.out.as_deref(), &bytes)?;
    status
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
