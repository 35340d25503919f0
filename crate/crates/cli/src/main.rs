mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::Status;

/// Polynomial-method experiments over finite fields.
///
/// Every command prints one JSON document (or a CSV table) that echoes the
/// resolved configuration. Exit status: 0 pass, 1 negative verdict, 2 error.
#[derive(Debug, Parser)]
#[command(name = "nikodym", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalOpts {
    /// Field as "p^k", "p" or a prime power such as "9" [default: 2^1, or
    /// taken from the input file]
    #[arg(long, global = true)]
    field: Option<String>,
    /// Ambient dimension [default: 2, or taken from the input file]
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Seed for every random choice the command makes
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest matrix (entries) built for a rank computation
    #[arg(long, global = true, default_value_t = 4_000_000)]
    cap_matrix: u64,
    /// Largest number of points q^d a command enumerates
    #[arg(long, global = true, default_value_t = 10_000_000)]
    cap_points: u64,
    /// Predicate evaluations allowed to a search
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Nikodym,
    Weak,
    Kakeya,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TieBreakArg {
    /// Least valid line in canonical order
    Canonical,
    /// Uniform among valid lines, driven by --seed
    Seeded,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a set file against a Nikodym-type predicate
    Verify {
        /// Set file: header "q d", then one point per line
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Weak)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = TieBreakArg::Canonical)]
        tie_break: TieBreakArg,
    },
    /// Smallest set satisfying a predicate in F_q^d
    Search {
        #[arg(long, value_enum, default_value_t = Mode::Weak)]
        mode: Mode,
    },
    /// Rank certificates for a point set on an r-flat (r = --dim)
    #[command(group = clap::ArgGroup::new("source").required(true))]
    Spread {
        /// Points from a set file
        #[arg(long, group = "source")]
        points: Option<PathBuf>,
        /// Grid A^r built from the first A field elements
        #[arg(long, group = "source")]
        grid: Option<usize>,
        /// K distinct points drawn with --seed
        #[arg(long, group = "source")]
        random: Option<usize>,
        /// Multiplicities to certify, comma separated
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<u32>,
        /// Fixed degree bound D; omit to search for the largest forced D
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Evaluate the inequality chain bounding the number of punctured lines
    #[command(group = clap::ArgGroup::new("target").required(true))]
    Bound {
        /// Field order q (d is --dim)
        #[arg(long, group = "target")]
        q: Option<u64>,
        /// JSON input {q, d, lines, mp, c} or a weak Nikodym set file
        #[arg(long, group = "target")]
        instance: Option<PathBuf>,
        /// Sweep x_max / q^(d-1/d) over prime powers in LO:HI
        #[arg(long, group = "target")]
        sweep: Option<String>,
        #[arg(long, value_enum, default_value_t = TieBreakArg::Canonical)]
        tie_break: TieBreakArg,
    },
    /// Modulus and element list of a field
    FieldInfo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
