//! `sicfair`: solve, evaluate and certify successive-decoding orders.

mod commands;
mod profile;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sicfair", version, about = "Max-min fair decoding orders for interference channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    /// Rank-axiom tolerance (also the slack for negative marginal rates).
    #[arg(long, default_value_t = sicfair_core::Tolerances::DEFAULT_AXIOM, global = true)]
    pub tol: f64,

    /// Solve tabulated inputs that are not rank functions.
    #[arg(long, global = true)]
    pub force: bool,

    /// Worker threads for exhaustive search.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKindArg {
    Gaussian,
    Dmc,
    TabulatedSubmodular,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the greedy decoding profile and its rates.
    Solve {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Evaluate the rates of a given decoding profile.
    Rates {
        #[arg(long)]
        scenario: PathBuf,
        /// Per receiver, decoded users in decoding order ending with the
        /// receiver itself, e.g. `1:2,1;2:2`.
        #[arg(long, conflicts_with = "profile_file", required_unless_present = "profile_file")]
        profile: Option<String>,
        /// Structured `solve` output to take the profile from.
        #[arg(long)]
        profile_file: Option<PathBuf>,
    },
    /// Compare the greedy profile with exhaustive search.
    Certify {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Check the rank-function axioms.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Write a seeded random scenario.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKindArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Transmit power of every user (gaussian).
        #[arg(long, default_value_t = 1.0)]
        power: f64,
        /// Noise variance at every receiver (gaussian).
        #[arg(long, default_value_t = 1.0)]
        noise: f64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { scenario } => commands::solve(&scenario, &cli.common),
        Command::Rates {
            scenario,
            profile,
            profile_file,
        } => commands::rates(&scenario, profile.as_deref(), profile_file.as_deref(), &cli.common),
        Command::Certify { scenario } => commands::certify(&scenario, &cli.common),
        Command::Validate { scenario } => commands::validate(&scenario, &cli.common),
        Command::Gen {
            kind,
            seed,
            k,
            power,
            noise,
            out,
        } => commands::gen(kind, seed, k, power, noise, out.as_deref()),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
