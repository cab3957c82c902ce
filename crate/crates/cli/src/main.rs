//! `multipoles`: reproducible CSV/JSON tables of Maxwell multipole axes,
//! their analytic correlation functions and Monte Carlo checks.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use multipole_core::{DEFAULT_BITS, MAX_ELL};

#[derive(Parser, Debug)]
#[command(name = "multipoles", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Degree ℓ of the spherical function.
    #[arg(long, global = true)]
    pub ell: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// CSV destination; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// JSON mirror destination (coefficients, report or summary).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// Worker threads for Monte Carlo runs.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Significand bits for extended-precision evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_BITS)]
    pub precision_bits: usize,

    /// Coefficient file used instead of a sampled realization.
    #[arg(long, global = true)]
    pub coeffs: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One realization's coefficients and multipole axes.
    Sample,
    /// The function Φ(θ, φ) on a regular grid.
    FunctionGrid {
        #[arg(long, default_value_t = 91)]
        theta_steps: usize,
        #[arg(long, default_value_t = 180)]
        phi_steps: usize,
    },
    /// Two-point density of the multipole points against angular separation.
    Rho2 {
        #[arg(long, default_value_t = 1.0)]
        theta_min: f64,
        #[arg(long, default_value_t = 179.0)]
        theta_max: f64,
        #[arg(long, default_value_t = 179)]
        theta_steps: usize,
        /// Divide by the squared one-point density.
        #[arg(long)]
        normalized: bool,
    },
    /// Monte Carlo pair histogram compared with the analytic curve.
    Mc {
        #[arg(long, default_value_t = 10_000)]
        realizations: u64,
        #[arg(long, default_value_t = 60)]
        bins: usize,
    },
    /// Large-degree limit: g(R) table and deviations of finite degrees.
    Limit {
        #[arg(long, value_delimiter = ',', default_value = "25,50,100,200")]
        ells: Vec<usize>,
        #[arg(long, default_value_t = 0.2)]
        r_min: f64,
        #[arg(long, default_value_t = 4.0)]
        r_max: f64,
        #[arg(long, default_value_t = 191)]
        r_steps: usize,
    },
}

impl Common {
    pub fn ell(&self) -> Result<usize, String> {
        let ell = self.ell.ok_or("--ell is required")?;
        check_ell(ell)?;
        Ok(ell)
    }

    fn validate(&self) -> Result<(), String> {
        if self.workers == Some(0) {
            return Err("--workers must be positive".into());
        }
        if self.precision_bits < 64 {
            return Err(format!(
                "--precision-bits must be at least 64, got {}",
                self.precision_bits
            ));
        }
        Ok(())
    }
}

pub fn check_ell(ell: usize) -> Result<(), String> {
    if ell == 0 || ell > MAX_ELL {
        return Err(format!("ℓ must lie in 1..={MAX_ELL}, got {ell}"));
    }
    Ok(())
}

fn run(cfg: &RunConfig) -> Result<(), String> {
    cfg.common.validate()?;
    let c = &cfg.common;
    match &cfg.command {
        Command::Sample => commands::sample(c),
        Command::FunctionGrid { theta_steps, phi_steps } => commands::function_grid(c, *theta_steps, *phi_steps),
        Command::Rho2 {
            theta_min,
            theta_max,
            theta_steps,
            normalized,
        } => commands::rho2(c, *theta_min, *theta_max, *theta_steps, *normalized),
        Command::Mc { realizations, bins } => commands::mc(c, *realizations, *bins),
        Command::Limit {
            ells,
            r_min,
            r_max,
            r_steps,
        } => commands::limit(c, ells, *r_min, *r_max, *r_steps),
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
