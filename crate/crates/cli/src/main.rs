mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use eigentree::CoverSpec;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "eigentree", version, about = "Eigenvalue strata, tree spaces, associahedra and real moduli covers")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, short, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Significant digits for floating output.
    #[arg(long, global = true, default_value_t = 17, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, normal form, stratum and resolved tree of a symmetric matrix.
    Eigen {
        /// CSV, whitespace grid or JSON rows; `-` reads stdin.
        #[arg(long)]
        matrix: PathBuf,
        /// Relative gap at or below which neighbouring eigenvalues share a stratum block.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Stopping tolerance of the Jacobi iteration.
        #[arg(long, default_value_t = 1e-14)]
        jacobi_tol: f64,
    },
    /// Configuration on the line of a planar metric tree.
    Embed {
        #[command(flatten)]
        tree: TreeInput,
    },
    /// Diaconis-Holmes matching of a binary tree, or the tree of a matching.
    Dh {
        #[command(flatten)]
        tree: OptTreeInput,
        /// Pairs such as `1-2,3-5,4-6`.
        #[arg(long, conflicts_with_all = ["newick", "tree"])]
        matching: Option<String>,
    },
    /// One-skeleton of the space of fully grown trees.
    TnGraph {
        #[arg(long)]
        n: usize,
    },
    /// Catalan number, binary topologies, tiles, cubes and Euler characteristic.
    Counts {
        #[arg(long)]
        n: usize,
    },
    /// Cells and boundaries of a quotient of K_n x S_{n+1}.
    Complex {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "orientation")]
        cover: CoverSpec,
    },
    /// Number of cubes of the orientation cover over each top cell of the suspension.
    Fold {
        #[arg(long)]
        n: usize,
    },
    /// Degree of the fold of K_n onto the cube, from random targets.
    Degree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// zeta(2) by graded Gauss-Legendre quadrature.
    Period {
        #[arg(long, default_value_t = 256)]
        nodes: usize,
    },
    /// Monte Carlo volume of an associahedral cell.
    Volume {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
struct TreeInput {
    /// Newick text.
    #[arg(long)]
    newick: Option<String>,
    /// File holding a Newick tree; `-` reads stdin.
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
#[group(multiple = false)]
struct OptTreeInput {
    /// Newick text
    #[arg(long)]
    newick: Option<String>,
    /// File holding a Newick tree; `-` reads stdin
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] eigentree::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Lib(e) => e.exit_code() as u8,
        }
    }
}

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("EIGENTREE_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("EIGENTREE_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    threads()?;
    let text = commands::dispatch(&cli.command, cli.format, cli.digits as usize)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "stdout".into(), source }),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
