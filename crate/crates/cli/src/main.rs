//! `quadric-approx`: batch front end for the approximation library.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact Dirichlet-type approximation by rational points on quadrics.
///
/// Exit status: 0 success, 1 no solution exists (Q anisotropic), 2 budget
/// below threshold, 3 unreadable or invalid input, 4 comparison undecidable
/// at the precision cap, 5 certificate rejected by `verify`, 6 internal
/// failure (search exhausted or enumeration limit).
#[derive(Parser, Debug)]
#[command(name = "quadric-approx", version, about, long_about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write JSON here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Precision cap in bits for certified enclosures.
    #[arg(long, global = true, default_value_t = quadric_approx::exactnum::DEFAULT_MAX_BITS)]
    pub max_bits: u32,
    /// Worker threads for lattice enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve an instance and print its certificate.
    Approximate {
        /// Instance JSON file, or `-` for standard input.
        input: PathBuf,
        /// Minimize |q(αφ − υ)| at ∞ over the whole guaranteed ball
        /// instead of taking the vector of least twisted norm.
        #[arg(long)]
        best: bool,
    },
    /// Witt decomposition of a form (a QuadForm, or an object with a `q` field).
    Witt {
        input: PathBuf,
    },
    /// H(E), H(q), H(1,q) and λ₁(E) for an instance (places optional).
    Heights {
        input: PathBuf,
    },
    /// Rational points on q = 1 through a base point, from random directions.
    GenPoints {
        /// JSON object {"q": QuadForm, "x0": [Rat, ...]}.
        input: PathBuf,
        /// Number of points.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Bound on the integer entries of the random directions.
        #[arg(long, default_value_t = 100)]
        height: i64,
        /// Seed of the direction stream.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check a certificate against its instance.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
    },
    /// Solve the built-in single-form corpus and report observed/bound ratios.
    Bench {
        /// Sphere points per corpus form.
        #[arg(long, default_value_t = 5)]
        points: usize,
        /// Seed of the sphere-point generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the rows as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Use the minimal-error vector for every instance.
        #[arg(long)]
        best: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_INTERNAL);
        }
    }
    match commands::run(&cli.command, &cli.global) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
