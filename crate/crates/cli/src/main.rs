//! `tvr`: Turaev-Viro invariants, 6j-symbols and growth checks from the
//! command line.

mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use turaev_viro::statesum::PrecisionMode;

#[derive(Parser)]
#[command(
    name = "tvr",
    version,
    about = "SO(3) Turaev-Viro invariants from triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute TV_r for one level or a range of levels.
    Tv(TvArgs),
    /// Evaluate a single quantum 6j-symbol.
    Sixj(SixjArgs),
    /// Evaluate the Lobachevsky function.
    Lob(LobArgs),
    /// Growth rates (2π/r) log|TV_r| with a fit and bound checks.
    Growth(GrowthArgs),
    /// Run the built-in verification checks.
    Verify(VerifyArgs),
    /// List the built-in triangulations.
    Builtins(FormatArg),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Name of a built-in triangulation.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Path to a JSON gluing manifest.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct LevelArgs {
    /// A single odd level r ≥ 5.
    #[arg(long = "r", allow_hyphen_values = true)]
    pub r: Option<i64>,
    /// Inclusive range of odd levels, `A:B`.
    #[arg(long)]
    pub r_range: Option<String>,
}

#[derive(Args, Clone, Copy)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Precision {
    Standard,
    Oracle,
}

impl From<Precision> for PrecisionMode {
    fn from(p: Precision) -> Self {
        match p {
            Precision::Standard => PrecisionMode::Standard,
            Precision::Oracle => PrecisionMode::Oracle,
        }
    }
}

#[derive(Args)]
pub struct ComputeArgs {
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = Precision::Standard)]
    pub precision: Precision,
    /// Multiply by 2^(b2 - b0) computed over GF(2).
    #[arg(long)]
    pub betti_factor: bool,
}

#[derive(Args)]
pub struct TvArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub levels: LevelArgs,
    #[command(flatten)]
    pub compute: ComputeArgs,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args)]
pub struct SixjArgs {
    #[arg(long = "r", allow_hyphen_values = true)]
    pub r: i64,
    /// Colors a1..a6 (even integers in [0, r-3]).
    #[arg(num_args = 6, required = true)]
    pub colors: Vec<u32>,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args)]
pub struct LobArgs {
    /// Arguments in radians; `pi`, `3pi/4` and `pi/8` style forms are accepted.
    #[arg(required = true, allow_negative_numbers = true)]
    pub x: Vec<String>,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Inclusive range of odd levels, `A:B`.
    #[arg(long)]
    pub r_range: String,
    #[command(flatten)]
    pub compute: ComputeArgs,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Comma-separated groups or check-name fragments to run.
    #[arg(long)]
    pub only: Option<String>,
    /// Replace every check's tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Seed for the random starts of the appendix optimizer.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub format: FormatArg,
}

/// Failure classes with their process exit codes.
#[derive(Debug)]
pub enum CliError {
    Verification(String),
    Input(String),
    Consistency(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Input(m) | CliError::Consistency(m) => m,
        }
    }
}

impl From<turaev_viro::Error> for CliError {
    fn from(e: turaev_viro::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Consistency(e.to_string())
        }
    }
}

impl From<turaev_viro::complexes::ComplexError> for CliError {
    fn from(e: turaev_viro::complexes::ComplexError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Tv(a) => commands::tv(&a, &mut out),
        Command::Sixj(a) => commands::sixj(&a, &mut out),
        Command::Lob(a) => commands::lob(&a, &mut out),
        Command::Growth(a) => commands::growth(&a, &mut out),
        Command::Verify(a) => verify::run(&a, &mut out),
        Command::Builtins(f) => commands::builtins(f.format, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
