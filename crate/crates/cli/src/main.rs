use std::path::PathBuf;
use std::process::ExitCode;

use acsum_cli::{CliError, Options, Session, EXIT_ERROR};
use clap::Parser;

/// Decide whether a connected sum admits an almost complex structure.
#[derive(Debug, Parser)]
#[command(name = "acsum", version)]
struct Args {
    /// Connected-sum expression, e.g. "3*CP(4) # conj(CP(4))".
    #[arg(long)]
    query: String,
    /// Files defining additional manifolds.
    #[arg(long, num_args = 1..)]
    manifolds: Vec<PathBuf>,
    /// File listing candidate structures per manifold.
    #[arg(long)]
    structures: Option<PathBuf>,
    /// File with obstruction_modulus[n] entries.
    #[arg(long)]
    modulus_table: Option<PathBuf>,
    /// Maximum number of complete assignments to examine.
    #[arg(long, default_value_t = acsum_core::DEFAULT_SEARCH_BOUND)]
    search_bound: u64,
    /// Print the report as one line of JSON.
    #[arg(long)]
    machine: bool,
}

fn execute(args: &Args) -> Result<(String, i32), CliError> {
    let files: Vec<&PathBuf> = args
        .manifolds
        .iter()
        .chain(&args.structures)
        .chain(&args.modulus_table)
        .collect();
    let session = Session::from_files(&files)?;
    let report = session.run(
        &args.query,
        &Options {
            search_bound: args.search_bound,
        },
    )?;
    let text = if args.machine {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    Ok((text, report.exit_code))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(&args) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
