//! `ybx`: verify, analyse, construct and enumerate solutions of
//! `XAX = BXB`, `XBX = AXA`.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ybx",
    version,
    about = "Exact solver toolkit for the system XAX = BXB, XBX = AXA"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    /// Matrix file for A.
    #[arg(long = "A", value_name = "FILE")]
    pub a: PathBuf,
    /// Matrix file for B.
    #[arg(long = "B", value_name = "FILE")]
    pub b: PathBuf,
    /// Work over F_p instead of the field named by the files.
    #[arg(long)]
    pub modulus: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether X solves the system; residuals are printed exactly.
    Verify {
        #[command(flatten)]
        pair: Pair,
        /// Matrix file for X.
        #[arg(long = "X", value_name = "FILE")]
        x: PathBuf,
    },
    /// Necessary-condition reports for (A, B), and for X when given.
    Conditions {
        #[command(flatten)]
        pair: Pair,
        /// Matrix file for X.
        #[arg(long = "X", value_name = "FILE")]
        x: Option<PathBuf>,
        /// Eigenvalue for the eigenspace annihilation check.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// The 2n² polynomial equations in the entries of X.
    Equations {
        #[command(flatten)]
        pair: Pair,
        /// Comma-separated names for the entries of X, row-major.
        #[arg(long)]
        vars: Option<String>,
        /// Keep identically zero equations.
        #[arg(long)]
        keep_zero: bool,
    },
    /// Reduced lex Gröbner basis of a polynomial system file.
    Groebner {
        /// Polynomial system file.
        #[arg(long, value_name = "FILE")]
        system: PathBuf,
        /// Variables in descending lex order, e.g. `a,b,c`.
        #[arg(long)]
        order: Option<String>,
        /// Eliminate this many leading variables.
        #[arg(long, value_name = "COUNT")]
        eliminate: Option<usize>,
        /// Report whether the ideal equals the one generated by this file.
        #[arg(long, value_name = "FILE")]
        compare: Option<PathBuf>,
    },
    /// Build a solution from a family parameter file.
    Family {
        /// Family parameter file.
        #[arg(long, value_name = "FILE")]
        params: PathBuf,
    },
    /// Enumerate every solution over F_p.
    Enumerate {
        /// Prime p: one of 3, 5, 7, 11, 13.
        #[arg(long)]
        modulus: u32,
        /// Matrix file for A.
        #[arg(long = "A", value_name = "FILE", requires = "b")]
        a: Option<PathBuf>,
        /// Matrix file for B.
        #[arg(long = "B", value_name = "FILE", requires = "a")]
        b: Option<PathBuf>,
        /// Size of a canonical idempotent pair diag(I_r, 0), diag(0, I_s, 0).
        #[arg(long, conflicts_with = "a")]
        dim: Option<usize>,
        /// r for the canonical pair.
        #[arg(long, requires = "dim")]
        rank: Option<usize>,
        /// s for the canonical pair; defaults to dim − rank.
        #[arg(long, requires = "dim")]
        complement: Option<usize>,
        /// Worker threads; defaults to YBX_WORKERS or the CPU count.
        #[arg(long, env = "YBX_WORKERS")]
        workers: Option<usize>,
        /// Skip classification and property checks.
        #[arg(long)]
        no_cross_validate: bool,
        /// Exit 2 if any solution is unclassified or fails a property.
        #[arg(long)]
        strict: bool,
    },
    /// Identify the family case that produces X.
    Classify {
        #[command(flatten)]
        pair: Pair,
        /// Matrix file for X.
        #[arg(long = "X", value_name = "FILE")]
        x: PathBuf,
    },
}

/// Outcome of a command that ran to completion.
pub struct Outcome {
    pub value: serde_json::Value,
    /// False for a verification failure (exit 2).
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.value).expect("serializable"),
                Format::Text => render::text(&outcome.value),
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text + "\n")
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => match writeln!(std::io::stdout(), "{text}") {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                    _ => Ok(()),
                },
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
