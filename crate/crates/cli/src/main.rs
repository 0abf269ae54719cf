//! `rtwave`: command-line front end of the stability analyzer.

mod commands;
mod config;
mod failure;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Setup;
use crate::config::RunConfig;
use crate::failure::Failure;

#[derive(Parser)]
#[command(
    name = "rtwave",
    version,
    about = "Linear Rayleigh-Taylor stability of two compressible viscous layers"
)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for the lattice sweep.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hydrostatic profile as CSV.
    Equilibrium,
    /// Minimal reduced energy at one frequency and trial rate.
    Alpha {
        #[arg(long)]
        xi: f64,
        #[arg(long)]
        s: f64,
    },
    /// Growth rates over the frequency lattice.
    Dispersion,
    /// Growth rate at a single frequency.
    Growth {
        #[arg(long)]
        xi: f64,
    },
    /// Stability regime from the density jump and surface tensions.
    Classify,
    /// Growing-mode profiles.
    Mode {
        #[arg(long)]
        xi: f64,
    },
    /// Time integration of the linearized system at one frequency.
    Oracle {
        #[arg(long)]
        xi: f64,
    },
    /// Two-sided extension of a periodic interface function.
    Extend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        /// Height at which the extension is evaluated.
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        x3: f64,
        /// Vertical derivative order.
        #[arg(long, default_value_t = 0)]
        order: usize,
    },
}

fn setup(config: Option<&Path>) -> Result<Setup, Failure> {
    let path = config.ok_or_else(|| Failure::Validation("--config is required".into()))?;
    Setup::new(RunConfig::load(path)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Validation("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Solver(e.to_string()))?;
    }
    std::fs::create_dir_all(&cli.out)
        .map_err(|e| Failure::Solver(format!("{}: {e}", cli.out.display())))?;
    let out = cli.out.as_path();
    let config = cli.config.as_deref();
    match cli.command {
        Command::Equilibrium => {
            let path = commands::equilibrium(&setup(config)?, out)?;
            println!("{}", path.display());
        }
        Command::Alpha { xi, s } => {
            println!("{}", commands::alpha(&setup(config)?, xi, s)?);
        }
        Command::Dispersion => {
            let s = commands::dispersion(&setup(config)?, out)?;
            println!(
                "Lambda = {} over {} frequencies",
                s.lambda_max,
                s.curve.len()
            );
        }
        Command::Growth { xi } => {
            let p = commands::growth(&setup(config)?, xi, out)?;
            println!("lambda = {}", p.lambda);
        }
        Command::Classify => {
            let r = commands::classify(&setup(config)?, out)?;
            println!("{}", r.regime);
        }
        Command::Mode { xi } => {
            let lambda = commands::mode(&setup(config)?, xi, out)?;
            println!("lambda = {lambda}");
        }
        Command::Oracle { xi } => {
            let r = commands::oracle(&setup(config)?, xi, out)?;
            println!(
                "lambda = {}, fitted = {}",
                r.lambda_variational, r.lambda_fitted
            );
        }
        Command::Extend {
            input,
            m,
            x3,
            order,
        } => {
            let path = commands::extend(&input, m, x3, order, out)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rtwave: {f}");
            f.exit_code()
        }
    }
}
