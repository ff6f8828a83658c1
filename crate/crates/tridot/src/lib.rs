//! Dynamics of three identical quantum dots coupled by Förster hopping and
//! driven by a classical laser field, restricted to the optically active
//! four-level exciton ladder (vacuum, single exciton, biexciton, triexciton).
//!
//! The crate provides two independent propagators for the same Hamiltonian:
//!
//! * [`spectral`] — an exact closed-form solution built from the
//!   characteristic quartic of the 4×4 Hamiltonian (Ferrari radicals,
//!   null-space eigenvectors, mode coefficients), and
//! * [`oracle`] — an adaptive Runge–Kutta integration of the Schrödinger
//!   equation that shares no algebra with the spectral path and is used to
//!   cross-validate it.
//!
//! [`observables`] computes populations and the GHZ-overlap probability
//! ℘(GHZ) = ½|B₀ + e^{−iτ}B₃|², and [`runner`] drives parameter sweeps,
//! CSV/SVG output and the validation suite behind the `tridot` CLI.
//!
//! Units: ℏ = 1 throughout; all rates and energies are in rad/fs, time in fs.

// explicit indices read better than iterator chains in fixed 4×4 kernels
#![allow(clippy::needless_range_loop)]

pub mod model;
pub mod observables;
pub mod oracle;
pub mod runner;
pub mod spectral;

pub(crate) mod linalg;

/// Complex amplitude type used for every quantum-mechanical quantity.
pub type C64 = num_complex::Complex64;

pub use model::{build_hamiltonian, Hamiltonian4, InitialState, ModelError, SystemParams};
pub use observables::{
    ghz_probability, ghz_probability_max, ghz_report, populations, GhzReport, StateError,
    StateVector4,
};
pub use oracle::{integrate_schrodinger, IntegratorConfig, OracleError};
pub use runner::{
    emit_csv, emit_svg, figure_parameter_sets, parse_config, run_simulation, run_validation_suite,
    ConfigError, RunConfig, RunError, Trajectory, ValidationReport,
};
pub use spectral::{
    characteristic_coefficients, eigensystem, propagate_closed_form, solve_quartic,
    QuarticCoefficients, SpectralDecomposition, SpectralError,
};

// The guide chapters double as doc-tests so their snippets stay compilable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hamiltonian.md")]
    mod hamiltonian {}
    #[doc = include_str!("../../../book/src/closed-form.md")]
    mod closed_form {}
    #[doc = include_str!("../../../book/src/cross-validation.md")]
    mod cross_validation {}
    #[doc = include_str!("../../../book/src/ghz-probability.md")]
    mod ghz_probability {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
