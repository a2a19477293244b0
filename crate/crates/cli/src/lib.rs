//! Command-line front end for `posetblock-core`.

pub mod commands;
pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Blockers of antichains in finite bounded posets, partition lattices and
/// subspace lattices.
#[derive(Debug, Parser)]
#[command(name = "posetblock", version)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Node budget for exact hitting-set searches and antichain enumeration.
    #[arg(long, global = true, default_value_t = posetblock_core::turan::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Split the top level of hitting-set searches across threads. Output is
    /// identical to the sequential mode.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Blocker of an antichain given as comma-separated labels.
    Blocker {
        /// Poset file: {"labels": [...], "covers": [[lower, upper], ...]}.
        poset: std::path::PathBuf,
        antichain: String,
    },
    /// Strong blocker duality.
    #[command(subcommand)]
    Duality(DualityCommand),
    /// Number partitions.
    #[command(subcommand)]
    Partitions(PartitionsCommand),
    /// The set partition lattice.
    #[command(subcommand)]
    Pi(PiCommand),
    /// Minimum intersecting sets against blocker atom counts.
    Turan(TuranArgs),
    /// Minimum sets of points meeting every k-dimensional subspace of F_q^n.
    Qblock {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DualityCommand {
    /// Decide strong duality of a poset file.
    Check { poset: std::path::PathBuf },
    /// Well-complemented posets with `n` atoms.
    Enumerate {
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum PartitionsCommand {
    /// Shapes of the blocker of the fibers of a refinement antichain.
    SymBlocker {
        #[arg(long)]
        n: usize,
        /// Semicolon-separated partitions, e.g. "2+2+2;3+1+1+1".
        antichain: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Brute,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum PiCommand {
    /// Blocker of fi(A), by the shape formula, in the materialized lattice, or both.
    Blocker {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        shapes: String,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
}

#[derive(Debug, Args)]
pub struct TuranArgs {
    #[arg(long, requires = "shapes", conflicts_with_all = ["poset", "antichain"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub shapes: Option<String>,
    #[arg(long, requires = "antichain")]
    pub poset: Option<std::path::PathBuf>,
    #[arg(long, requires = "poset")]
    pub antichain: Option<String>,
}
