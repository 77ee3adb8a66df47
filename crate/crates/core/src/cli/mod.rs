//! Command-line front end: `check`, `packet` and `modified`.
//!
//! Exit codes: 0 when every evaluated relation holds, 2 when at least one is
//! violated, 1 for usage, file or numerical setup errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

mod check;
mod modified;
mod packet;

pub use check::run_check;
pub use modified::{
    default_c_seed, default_x_max, modified_point, parse_sweep, run_modified, A1Mode, ModifiedRow, Sweep,
};
pub use packet::run_packet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Environment variable read when `--tolerance` is absent.
pub const TOLERANCE_ENV: &str = "GCSU_TOLERANCE";

#[derive(Debug, Parser)]
#[command(
    name = "gcsu",
    version,
    about = "Verify (generalized) Cauchy-Schwarz and uncertainty relations; build minimum-uncertainty packets",
    after_help = "Exit codes: 0 all relations hold, 1 usage or input error, 2 a relation was violated.\n\
                  CSV reports start with '#' metadata lines; '# generated_unix:' is the only line that varies between identical runs."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Randomized or file-driven inequality checks
    Check(CheckArgs),
    /// Gaussian minimum-uncertainty packet on a grid
    Packet(PacketArgs),
    /// Modified (two-Gaussian) packets, single point or alpha sweep
    Modified(ModifiedArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InequalityChoice {
    Cs,
    Gcs,
    Hr,
    Hrs,
    Gur,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MMode {
    /// m uniform among unit vectors orthogonal to psi
    Orthogonal,
    /// m uniform among all unit vectors
    Any,
}

const CHECK_COLUMNS: &str = "\
Report columns:
  label        relation: CS, GCS, HR, HRS or GUR
  lhs          left-hand side
  rhs          right-hand side
  residual     lhs - rhs
  satisfied    residual >= -tolerance * max(1, |lhs|)
  lambda_re    real part of the minimizing multiplier (empty when undefined)
  lambda_im    imaginary part of the minimizing multiplier (empty when undefined)
  seed         campaign seed
  trial_index  trial number; trial t draws from ChaCha8 stream t of the seed

Random inputs: states are normalized complex Gaussian vectors, operators are (G + G^dagger)/2.
CS/GCS use unnormalized Gaussian vectors a, b; GCS draws m uniformly; GUR draws m per --m-mode.
With files, one trial is evaluated per relation whose inputs are all given.";

#[derive(Debug, Clone, Args)]
#[command(after_help = CHECK_COLUMNS)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub inequality: InequalityChoice,
    /// Hilbert-space dimension for random trials
    #[arg(long, default_value_t = 8)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// State file (JSON) for HR/HRS/GUR
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Operator file (JSON) for observable A
    #[arg(long)]
    pub op_a: Option<PathBuf>,
    /// Operator file (JSON) for observable B
    #[arg(long)]
    pub op_b: Option<PathBuf>,
    /// Distinguished unit vector (JSON state file) for GCS/GUR
    #[arg(long)]
    pub m: Option<PathBuf>,
    /// Vector file (JSON state file) for `a` in CS/GCS
    #[arg(long)]
    pub vec_a: Option<PathBuf>,
    /// Vector file (JSON state file) for `b` in CS/GCS
    #[arg(long)]
    pub vec_b: Option<PathBuf>,
    /// How m is drawn for GUR when --m is absent
    #[arg(long, value_enum, default_value = "orthogonal")]
    pub m_mode: MMode,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: ReportFormat,
    /// Base residual tolerance, scaled by max(1, |lhs|)
    #[arg(long, env = TOLERANCE_ENV, default_value_t = crate::inequalities::DEFAULT_RESIDUAL_TOL)]
    pub tolerance: f64,
}

const PACKET_COLUMNS: &str = "\
Sample columns:
  x      grid point
  re     real part of psi(x)
  im     imaginary part of psi(x)
  abs2   |psi(x)|^2

Summary (JSON, to --summary or stderr): delta_x, delta_p, ratio = delta_x delta_p / (hbar/2),
norm, mean_x, mean_p, epsilon, lambda, a_sq and the grid settings.";

#[derive(Debug, Clone, Args)]
#[command(after_help = PACKET_COLUMNS)]
pub struct PacketArgs {
    #[arg(long, default_value_t = 1.0)]
    pub delta_x: f64,
    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,
    /// Half-width of the grid; defaults to 10 * delta_x
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Where to write the summary JSON (stderr otherwise)
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

const MODIFIED_COLUMNS: &str = "\
Sweep columns (one row per alpha; numeric fields empty for skipped points):
  alpha                    width parameter of u_m
  a_sq                     Gaussian width parameter a^2
  status                   ok, or 'skipped: <reason>'
  c_re, c_im               coefficient C of exp(-x^2/2a^2) after normalization
  a1_re, a1_im             a1 = int x u_m psi
  a2_re, a2_im             a2 = int u_m psi'
  x_m_re, x_m_im           x_m = a1 + a^2 a2
  delta_x_sq               position variance of the packet
  width_deviation          |a^2 - (dx^2 - |a1|^2)/(1/2 + a1* a2)| / |a^2|
  printed_width_deviation  same with denominator 1/2 - a1 a2
  width_ok                 width_deviation <= 1e-4
  relation_residual        max |x psi + a^2 psi' - x_m u_m| / max |psi|
  dual_gap                 max |psi_general - psi_explicit| / max |psi|
  dual_agree               dual_gap <= 1e-6 (a disagreement is reported, not fatal)
  squeeze_factor           a^2 / (2 dx^2); 1 for the standard packet";

#[derive(Debug, Clone, Args)]
#[command(after_help = MODIFIED_COLUMNS)]
pub struct ModifiedArgs {
    #[arg(long, conflicts_with = "sweep")]
    pub alpha: Option<f64>,
    /// alpha=LO:HI:STEPS, STEPS points including both ends
    #[arg(long, value_parser = parse_sweep)]
    pub sweep: Option<Sweep>,
    #[arg(long, default_value_t = 2.0)]
    pub a_sq: f64,
    /// Use this a1 (with C from --c-seed), then normalize jointly
    #[arg(long, conflicts_with = "solve", allow_negative_numbers = true)]
    pub a1: Option<f64>,
    /// Solve for a self-consistent a1 (default when --a1 is absent)
    #[arg(long)]
    pub solve: bool,
    /// Coefficient C; defaults to 0.9 (pi a^2)^(-1/4)
    #[arg(long, allow_negative_numbers = true)]
    pub c_seed: Option<f64>,
    /// Root of the normalization family taken by --solve
    #[arg(long, value_enum, default_value = "upper")]
    pub branch: BranchChoice,
    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,
    /// Defaults to the larger of 16 and 8 widths of either Gaussian
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchChoice {
    Upper,
    Lower,
}

/// Error that maps onto exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub(crate) fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, UsageError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Check(args) => run_check(&args),
        Command::Packet(args) => run_packet(&args),
        Command::Modified(args) => run_modified(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Parses `args` and runs; argument errors exit with code 1.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
