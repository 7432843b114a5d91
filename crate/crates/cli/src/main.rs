//! `dlogflow`: exact tree coefficients, D-Logs, flows and inverses of formal maps.
//!
//! Exit status is 0 when everything requested succeeded and every verdict
//! passed, 1 when a verification verdict failed, and 2 for usage errors,
//! malformed input and violated preconditions.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dlogflow", version, about = "Exact tree calculus for formal maps F = z + H")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// TOML file with defaults for trunc, max_vertices, seed, format and tables.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// JSON file that caches the phi and psi tables across runs.
    #[arg(long, global = true, value_name = "FILE")]
    pub tables: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count (or list) the rooted trees with a given number of vertices.
    Trees {
        /// Number of vertices.
        #[arg(long, value_name = "M")]
        count: usize,
        /// Print the canonical encodings too.
        #[arg(long)]
        list: bool,
    },
    /// Table of phi for all trees up to a vertex bound.
    PhiTable(TableArgs),
    /// Table of phi and the flow polynomial psi for all trees up to a vertex bound.
    PsiTable(TableArgs),
    /// The strict order polynomial of a tree, with direct counts.
    OrderPoly {
        /// Canonical encoding, e.g. "(()())".
        #[arg(long, value_name = "ENC")]
        tree: String,
    },
    /// Bernoulli number and polynomial of index n.
    Bernoulli {
        /// Index n.
        #[arg(long, value_name = "K")]
        n: usize,
    },
    /// The tree series P_T / alpha_T of a system H.
    Ptree {
        /// Canonical encoding of the tree.
        #[arg(long, value_name = "ENC")]
        tree: String,
        /// Series JSON of the system H.
        #[arg(long, value_name = "FILE")]
        system: PathBuf,
        /// Truncation order.
        #[arg(long, value_name = "N")]
        trunc: Option<usize>,
    },
    /// The D-Log of a map F.
    Dlog {
        #[command(flatten)]
        map: MapArgs,
        /// Compute by the tree expansion instead of the fixed-point solver.
        #[arg(long)]
        trees: bool,
    },
    /// The formal flow F_t at a rational time or with symbolic t.
    Flow {
        #[command(flatten)]
        map: MapArgs,
        /// Rational time, e.g. "3/2".
        #[arg(
            long = "t",
            value_name = "TIME",
            required_unless_present = "symbolic",
            allow_hyphen_values = true
        )]
        time: Option<String>,
        /// Keep t symbolic; coefficients become polynomials in t.
        #[arg(long, conflicts_with = "time")]
        symbolic: bool,
    },
    /// The formal inverse of a map F.
    Invert {
        #[command(flatten)]
        map: MapArgs,
        /// Compute by the tree expansion instead of the degree-by-degree solver.
        #[arg(long)]
        trees: bool,
    },
    /// Run a verification suite and report one verdict per case.
    Verify {
        /// Suite name, or "all".
        #[arg(long)]
        suite: String,
        /// Largest tree size to check.
        #[arg(long, value_name = "M")]
        max_vertices: Option<usize>,
        /// Truncation order for series-based suites.
        #[arg(long, value_name = "N")]
        trunc: Option<usize>,
        /// Seed for randomized suites; falls back to DLOGFLOW_SEED.
        #[arg(long, env = "DLOGFLOW_SEED")]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Largest number of vertices.
    #[arg(long, value_name = "M")]
    pub max_vertices: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Series JSON of F, or "-" for standard input.
    #[arg(long, value_name = "FILE")]
    pub map: PathBuf,
    /// Truncation order; the input is read as an exact polynomial.
    #[arg(long, value_name = "N")]
    pub trunc: Option<usize>,
}

/// Outcome of a successful command.
pub enum Status {
    Ok,
    VerdictFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerdictFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
