//! `pierce4` command-line tool.

mod bench;
mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit status: 1 for verification or pipeline failures, 2 for usage and input errors.
#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    Failure(anyhow::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn input_err(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Input(e.into())
}

pub fn failure(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Failure(e.into())
}

#[derive(Parser, Debug)]
#[command(name = "pierce4", version, about = "Four-point piercing of colorful families of translates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct BodyArgs {
    /// Named body: square, triangle, ngon<k>, disk256, ellipse256[:ratio], reuleaux192, random<k>:<seed>
    #[arg(long)]
    pub body: Option<String>,
    /// JSON file holding {"vertices": [[x, y], ...]} or a bare vertex list
    #[arg(long)]
    pub body_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance satisfying the cross-family hypothesis
    Gen {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long, default_value_t = 3)]
        families: usize,
        /// Comma-separated family sizes; a single value applies to every family
        #[arg(long, value_delimiter = ',', default_value = "5")]
        sizes: Vec<usize>,
        /// Within-family dispersion in body diameters
        #[arg(long, default_value_t = 0.5)]
        spread: f64,
        #[arg(long, default_value_t = 0.1)]
        margin: f64,
        /// Overridden by PIERCE4_SEED when set
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_rejections: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inscribed parallelogram P and homothetic copy Q = 2P around a body
    Approx {
        #[command(flatten)]
        body: BodyArgs,
        /// Direction of the side AB, in degrees
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        direction: f64,
        /// Containment tolerance relative to the body width
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Replace flush sub-chords on flat supports by a tilt cut of this depth
        #[arg(long)]
        shave: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pierce an instance and verify the certificate
    Pierce {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the bare certificate here
        #[arg(long)]
        certificate_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate against an instance
    Verify {
        #[arg(long)]
        instance: PathBuf,
        /// Bare certificate or a pierce report
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a corpus and aggregate pass rates
    Bench {
        /// approx, pierce, probe, default (approx + pierce), all, or empty
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Seed range start..end of the instance corpus
        #[arg(long, default_value = "0..200")]
        seeds: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Restrict to these body names
        #[arg(long, value_delimiter = ',')]
        bodies: Option<Vec<String>>,
        /// Directions per body in the approx sweep
        #[arg(long, default_value_t = 36)]
        directions: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult {
    let argv: Vec<String> = std::env::args().collect();
    match cli.command {
        Command::Gen {
            body,
            families,
            sizes,
            spread,
            margin,
            seed,
            max_rejections,
            out,
        } => commands::gen(commands::GenArgs {
            body,
            families,
            sizes,
            spread,
            margin,
            seed,
            max_rejections,
            out,
        }),
        Command::Approx {
            body,
            direction,
            tol,
            shave,
            svg,
            out,
        } => commands::approx(argv, &body, direction, tol, shave, svg, out),
        Command::Pierce {
            instance,
            svg,
            certificate_out,
            out,
        } => commands::pierce(argv, &instance, svg, certificate_out, out),
        Command::Verify { instance, certificate, out } => commands::verify(argv, &instance, &certificate, out),
        Command::Bench {
            corpus,
            seeds,
            jobs,
            bodies,
            directions,
            out,
        } => bench::bench(
            argv,
            bench::BenchArgs {
                corpus,
                seeds,
                jobs,
                bodies,
                directions,
                out,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Input(err) | CliError::Failure(err)) = &e;
            eprintln!("error: {err:#}");
            ExitCode::from(e.code())
        }
    }
}
