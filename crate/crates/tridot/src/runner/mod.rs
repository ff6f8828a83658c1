//! Run orchestration: sweep expansion, trajectory production, file output,
//! and the spectral-vs-integrator validation suite.

mod config;
mod csv;
mod svg;
mod validate;

pub use config::{parse_config, ConfigError, RunConfig, SolverChoice, SweepAxis, SweepParam};
pub use csv::emit_csv;
pub use svg::emit_svg;
pub use validate::{
    figure_parameter_sets, max_propagator_deviation, run_validation_suite, FigureCase,
    ValidationOutcome, ValidationReport, CROSS_VALIDATION_THRESHOLD,
};

use crate::model::{build_hamiltonian, ModelError, SystemParams};
use crate::observables::{ghz_report, populations, StateVector4};
use crate::oracle::{integrate_schrodinger, IntegratorConfig, OracleError};
use crate::spectral::{eigensystem, propagate_closed_form, SpectralError};
use rayon::prelude::*;
use thiserror::Error;

/// Crate version echoed into output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("writing {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// One sampled point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub state: StateVector4,
    pub populations: [f64; 4],
    pub p_ghz: f64,
    pub p_ghz_max: f64,
}

/// Full parameter echo attached to every trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub params: SystemParams,
    pub sweep: Option<(SweepParam, f64)>,
    pub solver: SolverChoice,
    pub version: &'static str,
    pub integrator_method: &'static str,
    /// Present when the run cross-checked against the other propagator.
    pub max_oracle_deviation: Option<f64>,
    pub emit_scaled_time: bool,
}

/// Time-ordered samples of one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub meta: TrajectoryMeta,
    pub rows: Vec<TrajectoryRow>,
}

impl Trajectory {
    /// Legend label: the swept parameter and value, or the solver name for
    /// un-swept runs.
    pub fn label(&self) -> String {
        match self.meta.sweep {
            Some((param, value)) => format!("{} = {}", param.as_str(), value),
            None => format!("{} = {}", "omega_rabi", self.meta.params.omega_rabi()),
        }
    }
}

/// Produces one trajectory per sweep value (a single trajectory without a
/// sweep). Sweep members run on parallel workers; results keep sweep order.
pub fn run_simulation(cfg: &RunConfig) -> Result<Vec<Trajectory>, RunError> {
    let runs = cfg.expanded_params()?;
    runs.par_iter()
        .map(|(sweep, params)| simulate_one(cfg, *sweep, params))
        .collect()
}

fn simulate_one(
    cfg: &RunConfig,
    sweep: Option<(SweepParam, f64)>,
    params: &SystemParams,
) -> Result<Trajectory, RunError> {
    let h = build_hamiltonian(params);
    let grid = params.time_grid();
    let b0 = params.initial_state_vector();
    let oracle_cfg = IntegratorConfig::default();

    let closed_form = |grid: &[f64]| -> Result<Vec<StateVector4>, RunError> {
        let sd = eigensystem(&h)?;
        Ok(grid.iter().map(|&t| propagate_closed_form(&sd, &b0, t)).collect())
    };

    let (states, cross) = match cfg.solver {
        SolverChoice::Spectral => {
            let states = closed_form(&grid)?;
            let cross = if cfg.validate {
                Some(integrate_schrodinger(&h, &b0, &grid, &oracle_cfg)?)
            } else {
                None
            };
            (states, cross)
        }
        SolverChoice::Oracle => {
            let states = integrate_schrodinger(&h, &b0, &grid, &oracle_cfg)?;
            let cross = if cfg.validate { Some(closed_form(&grid)?) } else { None };
            (states, cross)
        }
    };
    let max_oracle_deviation = cross.map(|other| max_state_deviation(&states, &other));

    let rows: Vec<TrajectoryRow> = grid
        .iter()
        .zip(states)
        .map(|(&t, state)| {
            let report = ghz_report(&state, params.tau());
            let row = TrajectoryRow {
                t,
                state,
                populations: populations(&state),
                p_ghz: report.p_ghz,
                p_ghz_max: report.p_ghz_max,
            };
            // probabilities outside [0, 1] would mean a broken propagator
            assert!(
                (0.0..=1.0).contains(&row.p_ghz) && (0.0..=1.0).contains(&row.p_ghz_max),
                "probability left [0, 1] at t = {t}"
            );
            row
        })
        .collect();

    Ok(Trajectory {
        meta: TrajectoryMeta {
            params: *params,
            sweep,
            solver: cfg.solver,
            version: VERSION,
            integrator_method: IntegratorConfig::METHOD,
            max_oracle_deviation,
            emit_scaled_time: cfg.emit_scaled_time,
        },
        rows,
    })
}

pub(crate) fn max_state_deviation(a: &[StateVector4], b: &[StateVector4]) -> f64 {
    let mut worst = 0.0_f64;
    for (x, y) in a.iter().zip(b) {
        for k in 0..4 {
            worst = worst.max((x.amplitude(k) - y.amplitude(k)).norm());
        }
    }
    worst
}

/// CSV file name for one trajectory of a run.
pub fn csv_path(prefix: &str, sweep: Option<(SweepParam, f64)>) -> String {
    match sweep {
        None => format!("{prefix}.csv"),
        Some((param, value)) => format!("{prefix}_{}_{}.csv", param.as_str(), value),
    }
}

/// SVG file name for a run.
pub fn svg_path(prefix: &str) -> String {
    format!("{prefix}.svg")
}

/// Runs the simulation and writes the requested outputs; returns the paths
/// written, CSVs in sweep order first, then the SVG.
pub fn execute(cfg: &RunConfig) -> Result<(Vec<Trajectory>, Vec<String>), RunError> {
    let trajectories = run_simulation(cfg)?;
    let mut written = Vec::new();
    if cfg.emit_csv {
        for traj in &trajectories {
            let path = csv_path(&cfg.out_prefix, traj.meta.sweep);
            emit_csv(traj, std::path::Path::new(&path))?;
            written.push(path);
        }
    }
    if cfg.emit_svg {
        let path = svg_path(&cfg.out_prefix);
        emit_svg(&trajectories, std::path::Path::new(&path))?;
        written.push(path);
    }
    Ok((trajectories, written))
}

/// Fixed run-output float format: 12 significant digits, lowercase
/// scientific below 1e-4 in magnitude. Deterministic for golden files.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if a < 1e-4 {
        format!("{x:.11e}")
    } else {
        let digits = a.log10().floor() as i32;
        let decimals = (11 - digits).max(0) as usize;
        format!("{x:.decimals$}")
    }
}
