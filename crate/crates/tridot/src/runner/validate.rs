//! Cross-validation of the two propagators on the built-in figure parameter
//! sets: the closed-form spectral path must agree with the independent
//! integrator to 1e-8 componentwise over the full 0–500 fs window.

use super::{max_state_deviation, RunError};
use crate::model::{build_hamiltonian, Hamiltonian4, SystemParams};
use crate::observables::StateVector4;
use crate::oracle::{integrate_schrodinger, IntegratorConfig};
use crate::spectral::{eigensystem, propagate_closed_form};
use crate::C64;
use rayon::prelude::*;

/// Componentwise agreement demanded between the propagators.
pub const CROSS_VALIDATION_THRESHOLD: f64 = 1e-8;

/// One named parameter set of the built-in figure sweeps.
#[derive(Debug, Clone)]
pub struct FigureCase {
    pub label: String,
    pub params: SystemParams,
}

fn case(label: String, eta: f64, omega: f64, delta: f64) -> FigureCase {
    FigureCase {
        label,
        params: SystemParams::builder()
            .eta(eta)
            .omega_rabi(omega)
            .delta(delta)
            .build()
            .expect("built-in parameter sets are valid"),
    }
}

/// The eight parameter sets behind the `fig1` and `fig2` sweeps: the
/// laser-coupling set Ω ∈ {0.1, 0.05, 0.03, 0.01} rad/fs at Δ = 0, and the
/// detuning set Δ ∈ {0.01, 0.03, 0.1, 0.3} rad/fs at Ω = 0.05, both with
/// η = 0.1 rad/fs and φ = 0, sampled every 0.5 fs over 0–500 fs.
pub fn figure_parameter_sets() -> Vec<FigureCase> {
    let mut cases = Vec::with_capacity(8);
    for omega in [0.1, 0.05, 0.03, 0.01] {
        cases.push(case(format!("fig1 omega_rabi={omega}"), 0.1, omega, 0.0));
    }
    for delta in [0.01, 0.03, 0.1, 0.3] {
        cases.push(case(format!("fig2 delta={delta}"), 0.1, 0.05, delta));
    }
    cases
}

/// Maximum componentwise amplitude difference between the closed-form
/// propagator driven by `h_spectral` and the integrator driven by
/// `h_oracle`, over the given sample times.
///
/// The two Hamiltonians are separate inputs so a deliberately corrupted
/// one can be injected on either side as a negative control; regular
/// validation passes the same Hamiltonian twice.
pub fn max_propagator_deviation(
    h_spectral: &Hamiltonian4,
    h_oracle: &Hamiltonian4,
    b0: &StateVector4,
    times: &[f64],
    cfg: &IntegratorConfig,
) -> Result<f64, RunError> {
    let sd = eigensystem(h_spectral)?;
    let exact: Vec<StateVector4> = times
        .iter()
        .map(|&t| propagate_closed_form(&sd, b0, t))
        .collect();
    let integrated = integrate_schrodinger(h_oracle, b0, times, cfg)?;
    Ok(max_state_deviation(&exact, &integrated))
}

/// Validation result for one figure case.
#[derive(Debug, Clone)]
pub struct ValidationOutcome {
    pub label: String,
    pub max_deviation: f64,
}

impl ValidationOutcome {
    pub fn passed(&self, threshold: f64) -> bool {
        self.max_deviation < threshold
    }
}

/// Outcome of the whole suite.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub threshold: f64,
    pub outcomes: Vec<ValidationOutcome>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed(self.threshold))
    }
}

/// Runs every figure parameter set through both propagators.
///
/// `oracle_perturbation` is a test hook: a nonzero value (rad/fs) is added
/// Hermitianly to the ξ01 coupling of the integrator-side Hamiltonian only,
/// which must make the suite fail. Regular runs pass 0.
pub fn run_validation_suite(oracle_perturbation: f64) -> Result<ValidationReport, RunError> {
    let cases = figure_parameter_sets();
    let outcomes: Result<Vec<ValidationOutcome>, RunError> = cases
        .par_iter()
        .map(|case| {
            let h = build_hamiltonian(&case.params);
            let h_oracle = if oracle_perturbation != 0.0 {
                perturb_coupling(&h, oracle_perturbation)
            } else {
                h
            };
            let times = case.params.time_grid();
            let b0 = case.params.initial_state_vector();
            let max_deviation = max_propagator_deviation(
                &h,
                &h_oracle,
                &b0,
                &times,
                &IntegratorConfig::default(),
            )?;
            Ok(ValidationOutcome {
                label: case.label.clone(),
                max_deviation,
            })
        })
        .collect();
    Ok(ValidationReport {
        threshold: CROSS_VALIDATION_THRESHOLD,
        outcomes: outcomes?,
    })
}

fn perturb_coupling(h: &Hamiltonian4, magnitude: f64) -> Hamiltonian4 {
    let mut m = *h.elements();
    m[0][1] += C64::new(magnitude, 0.0);
    m[1][0] += C64::new(magnitude, 0.0);
    Hamiltonian4::from_elements(m).expect("Hermitian perturbation stays valid")
}
