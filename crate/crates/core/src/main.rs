use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lienil::catalog::bundled_text;
use lienil::cli::{run, Command, RunConfig, EXIT_INPUT_ERROR};
use lienil::group::DEFAULT_MAX_ORDER;

/// Lie nilpotency indices of modular group algebras.
#[derive(Parser)]
#[command(version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Catalog file (JSON); the bundled catalog when omitted.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Only the catalog entry with this name.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Use this prime instead of each entry's declared primes.
    #[arg(short = 'p', long = "prime", global = true)]
    prime: Option<u64>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// One JSON object per line instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Group invariants: order, class, lower central series, abelian types.
    Analyze,
    /// Lower and upper Lie nilpotency indices with the chain dimensions.
    Indices,
    /// Almost-maximal condition and predicted index class.
    Classify,
    /// Indices plus every consistency check, for each group and prime.
    Scan,
    /// Witness search and weight-7 commutator chain verification.
    VerifyProof,
    /// Nilpotency class of the unit group, for tiny p-groups.
    UnitsClass,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Analyze => Command::Analyze,
        Cmd::Indices => Command::Indices,
        Cmd::Classify => Command::Classify,
        Cmd::Scan => Command::Scan,
        Cmd::VerifyProof => Command::VerifyProof,
        Cmd::UnitsClass => Command::UnitsClass,
    };
    let catalog = match &args.catalog {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT_ERROR as u8);
            }
        },
        None => bundled_text().to_string(),
    };
    let config = RunConfig {
        command,
        catalog_path: args.catalog,
        group: args.group,
        prime: args.prime,
        max_order: args.max_order,
        json: args.json,
        jobs: args.jobs,
    };
    let code = run(&config, &catalog, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
