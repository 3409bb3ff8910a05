//! `widegraph` command-line interface.
//!
//! Reads graphs, graph morphisms, coverings and covering morphisms from
//! JSON files and emits deterministic reports: homology bases, transfer
//! matrices, cycle lifts, weight-graded dimension reports, and axiom
//! checks. Exit codes: 0 success, 1 mathematical validation failure,
//! 2 input or parse error.

mod commands;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use commands::CommandError;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "widegraph",
    version,
    about = "Graph homology over exact rationals, finite flat morphisms, and dual graphs of semi-stable coverings"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Suppress matrix blocks in reports.
    #[arg(long, global = true)]
    no_matrices: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph, covering, or morphism file against its schema and axioms.
    Validate {
        /// Input file (kind detected from its top-level keys).
        input: PathBuf,
    },
    /// Betti number, cycle basis and cohomology representatives of a graph.
    Homology {
        /// Graph JSON file.
        input: PathBuf,
    },
    /// Weight-graded dimension report of a covering.
    Dims {
        /// Covering JSON file.
        input: PathBuf,
    },
    /// Pushforward matrices of a graph morphism on H_1 and H^1.
    Push {
        /// Graph morphism JSON file.
        input: PathBuf,
    },
    /// Pullback matrices of a graph morphism on H_1 and H^1.
    Pull {
        /// Graph morphism JSON file.
        input: PathBuf,
    },
    /// Lift a target cycle through a graph morphism.
    Lift {
        /// Graph morphism JSON file.
        input: PathBuf,
        /// Base cycle as comma-separated darts, e.g. "l+" or "s0+,s1+,s2+".
        #[arg(long)]
        cycle: String,
        /// Seed for randomized tie-breaking; deterministic when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Validate a graph morphism and verify the transfer-map identities.
    MorphismCheck {
        /// Graph morphism JSON file.
        input: PathBuf,
    },
    /// Graded transfer maps of a covering morphism with composition checks.
    FunctorialCheck {
        /// Covering morphism JSON file.
        input: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<commands::Output, CommandError> {
    let with_matrices = !cli.no_matrices;
    match &cli.command {
        Command::Validate { input } => commands::validate(input),
        Command::Homology { input } => commands::homology(input, with_matrices),
        Command::Dims { input } => commands::dims(input),
        Command::Push { input } => commands::push(input, with_matrices),
        Command::Pull { input } => commands::pull(input, with_matrices),
        Command::Lift { input, cycle, seed } => commands::lift(input, cycle, *seed),
        Command::MorphismCheck { input } => commands::morphism_check(input, with_matrices),
        Command::FunctorialCheck { input } => commands::functorial_check(input, with_matrices),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("report serializes")
                ),
            }
            std::process::exit(out.exit_code);
        }
        Err(CommandError::Validation(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
        Err(CommandError::Input(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
