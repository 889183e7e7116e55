//! Command-line front end for `qmerge-core`.
//!
//! Results go to standard output as JSON (default) or CSV; diagnostics go to
//! standard error. All randomness derives from `--seed` through
//! `(seed, stream)` pairs, so outputs are byte-reproducible.

pub mod commands;
pub mod error;
pub mod input;
pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmerge_core::Caps;

pub use error::CliError;
pub use output::Format;

#[derive(Debug, Parser)]
#[command(name = "qmerge", version, about = "Partial quantum information and state-merging simulator")]
pub struct Cli {
    /// Output format (default: json; `entropy` prints a signed number).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest pure-state dimension built internally.
    #[arg(long, global = true, env = "QMERGE_DIM_CAP")]
    pub dim_cap: Option<usize>,

    /// Largest density-matrix side built internally.
    #[arg(long, global = true)]
    pub density_cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            pure_dim: self.dim_cap.unwrap_or(d.pure_dim),
            density_side: self.density_cap.unwrap_or(d.density_side),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy of a label set, optionally conditioned on another.
    Entropy(EntropyArgs),
    /// Entropies of all label subsets and pairwise quantities.
    Report(ReportArgs),
    /// Simulate state merging by random measurement.
    Merge(MergeArgs),
    /// Distributed-compression or multiple-access rate region.
    Region(RegionArgs),
    /// Entanglement of assistance over all helper cuts.
    Eoa(EoaArgs),
    /// Rates for coding with side information produced by a channel.
    Sideinfo(SideinfoArgs),
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// Preset, JSON text, or path to a state file.
    #[arg(long)]
    pub state: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub of: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub given: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub state: String,
    /// Largest subset size to enumerate (default: all).
    #[arg(long)]
    pub max_size: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Haar,
    /// Fourier transform on each of Alice's subsystems (Hadamard for qubits).
    Fourier,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    #[arg(long)]
    pub state: String,
    /// Number of copies.
    #[arg(short = 'n', long = "copies", required_unless_present = "curve", conflicts_with = "curve")]
    pub copies: Option<usize>,
    /// Bits of rate budget left unused when choosing the block size.
    #[arg(long, default_value_t = 1.0)]
    pub slack: f64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Inclusive copy range `n1..n2`; emits one aggregate row per n.
    #[arg(long)]
    pub curve: Option<String>,
    /// Enumerate every measurement outcome instead of sampling one.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = BasisArg::Haar)]
    pub basis: BasisArg,
    #[arg(long, value_delimiter = ',', default_value = "A")]
    pub alice: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "B")]
    pub bob: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long)]
    pub state: String,
    /// Multiple-access bounds instead of distributed compression.
    #[arg(long)]
    pub mac: bool,
    /// Rate vector to test for membership.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<f64>>,
    /// Compression parties (default: every label).
    #[arg(long, value_delimiter = ',')]
    pub parties: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "A")]
    pub sender_a: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "B")]
    pub sender_b: Vec<String>,
    /// Decoder labels (default: every label that is not a sender).
    #[arg(long, value_delimiter = ',')]
    pub receiver: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EoaArgs {
    #[arg(long)]
    pub state: String,
    #[arg(long, value_delimiter = ',', default_value = "A")]
    pub alice: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "B")]
    pub bob: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SideinfoArgs {
    #[arg(long)]
    pub state: String,
    /// Channel file or JSON text.
    #[arg(long)]
    pub channel: String,
    #[arg(long, value_delimiter = ',', default_value = "A")]
    pub alice: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
    #[arg(long)]
    pub seed: u64,
    /// Output dimension of the searched channels (default: that of U).
    #[arg(long)]
    pub out_cap: Option<usize>,
    /// Environment dimension of the searched channels (default: that of U).
    #[arg(long)]
    pub env_cap: Option<usize>,
}

/// Runs one invocation, returning the complete output document.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let caps = cli.caps();
    match &cli.command {
        Command::Entropy(a) => commands::entropy(a, cli.format, &caps),
        Command::Report(a) => commands::report(a, cli.format, &caps),
        Command::Merge(a) => commands::merge(a, cli.format, &caps),
        Command::Region(a) => commands::region(a, cli.format, &caps),
        Command::Eoa(a) => commands::eoa(a, cli.format, &caps),
        Command::Sideinfo(a) => commands::sideinfo(a, cli.format, &caps),
    }
}
