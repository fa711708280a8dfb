mod commands;
mod dsl;
mod output;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::Output;
use source::Source;

/// Exact Ehrhart polynomials, h*-vectors, coefficient bounds and surface areas
/// of lattice polytopes.
#[derive(Parser, Debug)]
#[command(name = "ehrhart", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ehrhart coefficients g_i, h*-vector, degree, volume and point counts
    Hstar {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Lattice points of the k-th dilate and of its interior
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Check a family of inequalities; exits with 2 on any violation
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Polytope with h*-polynomial 1 + a1 z + a2 z^2
    Witness {
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        a2: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Facet areas, lattice surface area and Euclidean surface area
    Surface {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Generators of a constructed or sampled polytope
    Construct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Thm11,
    Corollary12,
    BmUpper,
    Hibi,
    StanleySym,
    Treutlein,
    Prop110,
    IsoCross,
    Eq15,
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    /// I/O, parse or parameter errors.
    Input(anyhow::Error),
    /// A cross-check or a proved inequality failed.
    Invariant(String),
    /// The requested degree-2 h*-vector does not exist.
    Inadmissible(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("EHRHART_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // a second initialisation can only fail if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Hstar { source, output } => commands::hstar(&source, &output),
        Command::Count { source, k, output } => commands::count(&source, k, &output),
        Command::Verify { suite, source, output } => commands::verify(suite, &source, &output),
        Command::Witness { a1, a2, output } => commands::witness(a1, a2, &output),
        Command::Surface { source, output } => commands::surface(&source, &output),
        Command::Construct { source, output } => commands::construct(&source, &output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inadmissible(msg)) => {
            eprintln!("inadmissible: {msg}");
            ExitCode::from(3)
        }
    }
}
