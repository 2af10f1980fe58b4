//! Thin command-line shell over the library: parses arguments, loads the
//! config, and dispatches to `runner`.
//!
//! Exit status: 0 on success, 1 on validation/config errors, 2 when
//! verification checks fail.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stern_gerlach::ensemble::{Phi0Law, SamplingSpec, Theta0Law};
use stern_gerlach::runner::{
    cmd_constants, cmd_density, cmd_ensemble, cmd_trajectories, cmd_verify, VerifyLevel,
};
use stern_gerlach::{Experiment, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "sg",
    about = "Stern-Gerlach beam simulator: analytic spinor, Bohmian trajectories, ensembles",
    version
)]
struct Cli {
    /// JSON config file; missing fields fall back to the silver-atom defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived apparatus quantities
    Constants,
    /// Density profiles at beam coordinates y; CSV per time plus an SVG overlay
    Density {
        /// Comma-separated y positions in meters, e.g. 0,0.01,0.11,0.21
        #[arg(long, value_delimiter = ',', default_value = "0,0.01,0.11,0.21")]
        times: Vec<f64>,
        /// Output directory
        #[arg(long, default_value = "out/density")]
        out: PathBuf,
        /// Grid points per profile
        #[arg(long, default_value_t = 1024)]
        grid_points: usize,
    },
    /// Integrate atom trajectories; per-atom CSV plus an arrowed SVG
    Trajectories {
        /// Number of atoms
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Initial polar angle: a value in radians, or 'uniform' / 'sine'
        #[arg(long, default_value = "uniform")]
        theta0: String,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// End time in seconds (default: transit + screen flight)
        #[arg(long)]
        t_end: Option<f64>,
        /// Drive atoms from the spreading-packet spinor phase gradients
        /// instead of the closed-form frozen-width laws (slower)
        #[arg(long)]
        exact: bool,
        /// Output directory
        #[arg(long, default_value = "out/trajectories")]
        out: PathBuf,
    },
    /// Run a Monte Carlo ensemble and collect impact statistics
    Ensemble {
        /// Number of atoms
        #[arg(long, default_value_t = 10000)]
        n: usize,
        /// Initial polar angle: a value in radians, or 'uniform' / 'sine'
        #[arg(long, default_value = "uniform")]
        theta0: String,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// End time in seconds (default: transit + screen flight)
        #[arg(long)]
        t_end: Option<f64>,
        /// Output directory
        #[arg(long, default_value = "out/ensemble")]
        out: PathBuf,
    },
    /// Cross-check the analytic solution against the spectral solver
    Verify {
        /// quick or full
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

fn parse_theta0(text: &str) -> Result<Theta0Law, String> {
    match text {
        "uniform" => Ok(Theta0Law::UniformInterval),
        "sine" => Ok(Theta0Law::SineWeighted),
        other => other
            .parse::<f64>()
            .map(Theta0Law::Fixed)
            .map_err(|_| format!("--theta0 expects radians, 'uniform', or 'sine'; got '{other}'")),
    }
}

fn run(cli: Cli) -> Result<ExitCode, stern_gerlach::Error> {
    let config = match &cli.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    let experiment = Experiment::new(config)?;
    let mut stdout = std::io::stdout().lock();

    match cli.command {
        Command::Constants => cmd_constants(&experiment, &mut stdout)?,
        Command::Density {
            times,
            out,
            grid_points,
        } => {
            cmd_density(&experiment, &times, grid_points, &out, &mut stdout)?;
        }
        Command::Trajectories {
            n,
            theta0,
            seed,
            t_end,
            exact,
            out,
        } => {
            let law = parse_theta0(&theta0).map_err(stern_gerlach::Error::InvalidArgument)?;
            cmd_trajectories(&experiment, n, law, seed, t_end, exact, &out, &mut stdout)?;
        }
        Command::Ensemble {
            n,
            theta0,
            seed,
            t_end,
            out,
        } => {
            let law = parse_theta0(&theta0).map_err(stern_gerlach::Error::InvalidArgument)?;
            let spec = SamplingSpec {
                n,
                seed,
                theta0_law: law,
                phi0_law: Phi0Law::Uniform,
            };
            cmd_ensemble(&experiment, &spec, t_end, &out, &mut stdout)?;
        }
        Command::Verify { level } => {
            let level = match level.as_str() {
                "quick" => VerifyLevel::Quick,
                "full" => VerifyLevel::Full,
                other => {
                    return Err(stern_gerlach::Error::InvalidArgument(format!(
                        "--level expects 'quick' or 'full', got '{other}'"
                    )))
                }
            };
            let report = cmd_verify(&experiment, level, &mut stdout)?;
            if !report.all_pass() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
