//! Command-line front end: figure sweeps, free-form simulations from a
//! config file, and the propagator cross-validation suite.
//!
//! Exit codes: 0 success, 1 validation failure (or runtime error), 2
//! configuration error.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tridot::runner::{execute, parse_config, run_validation_suite, RunConfig, SolverChoice};

const FIG1_CONFIG: &str = "\
# laser-coupling sweep at resonance
eta = 0.1
delta = 0
phi = 0
t_start = 0
t_end = 500
t_step = 0.5
sweep = omega_rabi: 0.1, 0.05, 0.03, 0.01
out = fig1
";

const FIG2_CONFIG: &str = "\
# detuning sweep at fixed drive
eta = 0.1
omega_rabi = 0.05
phi = 0
t_start = 0
t_end = 500
t_step = 0.5
sweep = delta: 0.01, 0.03, 0.1, 0.3
out = fig2
";

#[derive(Parser)]
#[command(
    name = "tridot",
    version,
    about = "GHZ entanglement dynamics of three Förster-coupled quantum dots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct OutputFlags {
    /// Output path prefix (overrides the config `out` key)
    #[arg(long)]
    out: Option<String>,
    /// Emit the SVG plot
    #[arg(long, overrides_with = "no_svg")]
    svg: bool,
    /// Skip the SVG plot
    #[arg(long = "no-svg", overrides_with = "svg")]
    no_svg: bool,
    /// Propagate with the Runge–Kutta integrator instead of the closed form
    #[arg(long)]
    oracle: bool,
    /// Cross-check against the other propagator and record the deviation
    #[arg(long)]
    validate: bool,
}

impl OutputFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(out) = &self.out {
            cfg.out_prefix = out.clone();
        }
        if self.svg {
            cfg.emit_svg = true;
        }
        if self.no_svg {
            cfg.emit_svg = false;
        }
        if self.oracle {
            cfg.solver = SolverChoice::Oracle;
        }
        if self.validate {
            cfg.validate = true;
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation described by a config file
    Simulate {
        /// Path to the flat key-value config document
        config: PathBuf,
        #[command(flatten)]
        flags: OutputFlags,
    },
    /// Built-in laser-coupling sweep (Ω ∈ {0.1, 0.05, 0.03, 0.01} rad/fs)
    Fig1 {
        #[command(flatten)]
        flags: OutputFlags,
    },
    /// Built-in detuning sweep (Δ ∈ {0.01, 0.03, 0.1, 0.3} rad/fs)
    Fig2 {
        #[command(flatten)]
        flags: OutputFlags,
    },
    /// Cross-validate the closed form against the integrator on all figure sets
    Validate {
        /// Test hook: corrupt the integrator-side coupling by this much (rad/fs)
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb_oracle: f64,
    },
}

fn run_from_text(text: &str, flags: &OutputFlags) -> ExitCode {
    let mut cfg = match parse_config(text) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    flags.apply(&mut cfg);
    match execute(&cfg) {
        Ok((trajectories, written)) => {
            for traj in &trajectories {
                if let Some(dev) = traj.meta.max_oracle_deviation {
                    println!("{}: max propagator deviation {dev:.3e}", traj.label());
                }
            }
            for path in written {
                println!("wrote {path}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn validate(perturb_oracle: f64) -> ExitCode {
    match run_validation_suite(perturb_oracle) {
        Ok(report) => {
            for outcome in &report.outcomes {
                let verdict = if outcome.passed(report.threshold) {
                    "PASS"
                } else {
                    "FAIL"
                };
                println!(
                    "{}: max deviation {:.3e} — {verdict}",
                    outcome.label, outcome.max_deviation
                );
            }
            if report.passed() {
                println!("all {} sets within {:.0e}", report.outcomes.len(), report.threshold);
                ExitCode::SUCCESS
            } else {
                eprintln!("validation failed");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate { config, flags } => match std::fs::read_to_string(&config) {
            Ok(text) => run_from_text(&text, &flags),
            Err(e) => {
                eprintln!("config error: cannot read {}: {e}", config.display());
                ExitCode::from(2)
            }
        },
        Command::Fig1 { flags } => run_from_text(FIG1_CONFIG, &flags),
        Command::Fig2 { flags } => run_from_text(FIG2_CONFIG, &flags),
        Command::Validate { perturb_oracle } => validate(perturb_oracle),
    }
}
