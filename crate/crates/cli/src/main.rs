//! `binfty`: validate dAs^{1,1} algebras, derive their B∞ structures, check
//! the laws and compute primitives.

mod commands;
mod format;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(name = "binfty", version, about = "Exact B-infinity structures from dAs^{1,1} algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the dAs^{1,1} axioms (and the coalgebra axioms when a coproduct is given).
    Validate {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the maps m_n and m_{i,j} of the underlying B∞ structure.
    Derive {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        /// Longest tensor word considered.
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the A∞, multibrace, compatibility and unital infinitesimal laws.
    Check {
        file: PathBuf,
        /// Comma-separated subset of ainf, mb, compat, uib.
        #[arg(long, value_delimiter = ',')]
        laws: Vec<String>,
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        /// Deliberately break the structure before checking (only `m11`).
        #[arg(long)]
        perturb: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compute the primitives of a bialgebra file and their induced structure.
    Primitives {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Built-in examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    /// List the built-in examples.
    List,
    /// Print an example as a JSON definition file.
    Emit {
        name: String,
        /// Emit the enveloping bialgebra on words of length at most L instead.
        #[arg(long)]
        envelope: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(outcome: commands::Outcome, out: &OutputArgs) -> Result<bool, Failure> {
    let report = outcome?;
    let text = match out.format {
        Format::Text => report.text(),
        Format::Json => report.json(),
    };
    write(out.output.as_ref(), &text)?;
    Ok(report.passed)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Validate { file, out } => emit(commands::validate(&read(&file)?), &out),
        Command::Derive {
            file,
            max_arity,
            cap,
            out,
        } => emit(commands::derive(&read(&file)?, max_arity, cap), &out),
        Command::Check {
            file,
            laws,
            max_arity,
            cap,
            perturb,
            out,
        } => emit(
            commands::check(&read(&file)?, &laws, max_arity, cap, perturb.as_deref()),
            &out,
        ),
        Command::Primitives { file, cap, out } => emit(commands::primitives(&read(&file)?, cap), &out),
        Command::Examples { action } => match action {
            ExamplesAction::List => {
                write(None, &commands::examples_list()?)?;
                Ok(true)
            }
            ExamplesAction::Emit { name, envelope, output } => {
                write(output.as_ref(), &commands::examples_emit(&name, envelope)?)?;
                Ok(true)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
