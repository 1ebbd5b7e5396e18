use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xxring_core::analysis::Parity;
use xxring_core::report::SiteRange;

/// Exact diagonalization of the spin-1/2 XX ring.
///
/// Sites are numbered from 1 on the command line (`--pair 1 2` is the first
/// bond); internally they start at 0.
#[derive(Debug, Parser)]
#[command(name = "xxring", version, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Worker threads; XXRING_THREADS takes precedence when set.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Record wall-clock times in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of every (k, m) block.
    Spectrum(SpectrumArgs),
    /// Ground energy, degeneracy and occupied sectors.
    Ground(GroundArgs),
    /// Ground-manifold concurrence of one pair.
    Concurrence(ConcurrenceArgs),
    /// Per-orbit probabilities of the ground manifold.
    Lp(LpArgs),
    /// Nearest-pair (or fixed-distance) concurrence over a range of n.
    Sweep(SweepArgs),
    /// Fits C(n) = C∞ + a/n + b/n² to a sweep.
    Extrapolate(ExtrapolateArgs),
    /// Cross-checks the block pipeline against full diagonalization.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Model {
    /// Number of sites.
    #[arg(long)]
    pub n: u32,
    /// Exchange constant J (negative: ferromagnetic).
    #[arg(long, allow_negative_numbers = true)]
    pub j: f64,
    /// Zeeman field b.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub b: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: Model,
    /// Restrict to the sector with this many up spins.
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GroundArgs {
    #[command(flatten)]
    pub model: Model,
    /// Degeneracy tolerance, relative to the spectral range.
    #[arg(long, default_value_t = xxring_core::eigen::DEFAULT_DEGENERACY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ConcurrenceArgs {
    #[command(flatten)]
    pub model: Model,
    /// Two sites, 1-based.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "distance")]
    pub pair: Option<Vec<u32>>,
    /// Pair (1, 1 + D).
    #[arg(long)]
    pub distance: Option<u32>,
    #[arg(long, default_value_t = xxring_core::eigen::DEFAULT_DEGENERACY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    /// Number of sites.
    #[arg(long)]
    pub n: u32,
    /// Exchange constant J.
    #[arg(long, allow_negative_numbers = true)]
    pub j: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Ring lengths: `7`, `2..14` or `2..=14` (inclusive).
    #[arg(long, default_value = "2..12")]
    pub n: SiteRange,
    /// Only the sign of J matters; energies are reported for |J| = 1.
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
    pub j: f64,
    #[arg(long, value_parser = parse_parity, default_value = "all")]
    pub parity: Parity,
    #[arg(long, default_value_t = 1)]
    pub distance: u32,
}

#[derive(Debug, Args)]
pub struct ExtrapolateArgs {
    /// Ring lengths to sweep when no input file is given.
    #[arg(long, default_value = "6..14", conflicts_with = "input")]
    pub n: SiteRange,
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0, conflicts_with = "input")]
    pub j: f64,
    #[arg(long, value_parser = parse_parity, default_value = "even", conflicts_with = "input")]
    pub parity: Parity,
    #[arg(long, default_value_t = 1, conflicts_with = "input")]
    pub distance: u32,
    /// Sweep report (JSON or CSV) to fit instead of computing one.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Ring lengths to check.
    #[arg(long, default_value = "2..10")]
    pub n: SiteRange,
    /// Check only this coupling; both signs of |J| = 1 by default.
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Largest allowed absolute difference.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse().map_err(|e: xxring_core::Error| e.to_string())
}
