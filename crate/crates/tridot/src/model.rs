//! Physical parameters and the effective four-level exciton-ladder
//! Hamiltonian of three Förster-coupled quantum dots.
//!
//! All rates are angular frequencies in rad/fs (ℏ = 1), time is in fs.
//! The basis is labeled by total exciton number: |0⟩ vacuum, |1⟩ single
//! exciton, |2⟩ biexciton, |3⟩ triexciton — the optically active J = 3/2
//! ladder of the three-dot system.
//!
//! The Rabi magnitude Ω already absorbs the laser field amplitude and the
//! dot's dipole coupling (ℏΩ = μ·E); no field-amplitude conversion is
//! provided, and the detuning Δ = (ε − ℏω)/ℏ is taken directly as an
//! angular frequency.

use crate::linalg::{Mat4, ZERO};
use crate::observables::StateVector4;
use crate::C64;
use thiserror::Error;

/// Hard cap on the number of time-grid samples a single run may request.
const MAX_GRID_POINTS: usize = 20_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("omega_rabi is a magnitude and must be >= 0, got {0} (carry the phase in phi)")]
    NegativeRabi(f64),
    #[error(
        "time grid requires t_end > t_start and t_step > 0, got t_start={t_start}, t_end={t_end}, t_step={t_step}"
    )]
    InvalidTimeGrid {
        t_start: f64,
        t_end: f64,
        t_step: f64,
    },
    #[error("time grid would contain {0} samples, above the {MAX_GRID_POINTS} cap")]
    GridTooFine(usize),
    #[error("custom initial amplitudes cannot be normalized (zero or non-finite norm)")]
    DegenerateInitialState,
    #[error("matrix element ({row},{col}) breaks Hermitian symmetry by {deviation:.3e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("matrix element ({row},{col}) lies outside the tridiagonal coupling band")]
    OutsideBand { row: usize, col: usize },
}

/// Initial state of the exciton ladder.
///
/// `Custom` amplitudes are normalized when the parameter set is built; a
/// zero or non-finite vector is rejected there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    /// |0⟩, the zero-exciton vacuum (≡ |000⟩ of the three dots).
    Vacuum,
    /// |1⟩, one exciton shared by the three dots.
    Single,
    /// |2⟩, the biexciton state.
    Bi,
    /// |3⟩, the triexciton state (≡ |111⟩).
    Tri,
    /// Arbitrary ladder amplitudes (B0, B1, B2, B3), normalized on build.
    Custom([C64; 4]),
}

impl InitialState {
    fn to_state(self) -> Result<StateVector4, ModelError> {
        let amps = match self {
            InitialState::Vacuum => return Ok(StateVector4::vacuum()),
            InitialState::Single => return Ok(StateVector4::single_exciton()),
            InitialState::Bi => return Ok(StateVector4::biexciton()),
            InitialState::Tri => return Ok(StateVector4::triexciton()),
            InitialState::Custom(amps) => amps,
        };
        StateVector4::normalized(amps).map_err(|_| ModelError::DegenerateInitialState)
    }
}

/// Validated physical inputs for one simulation run.
///
/// * `eta` — Förster hopping rate η, rad/fs
/// * `omega_rabi` — Rabi frequency magnitude Ω ≥ 0, rad/fs (phase in `phi`)
/// * `delta` — laser detuning Δ, rad/fs
/// * `phi` — laser phase φ, rad
/// * `tau` — GHZ reference phase τ, rad
/// * `t_start`, `t_end`, `t_step` — sampling grid, fs
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    eta: f64,
    omega_rabi: f64,
    delta: f64,
    phi: f64,
    tau: f64,
    t_start: f64,
    t_end: f64,
    t_step: f64,
    initial_state: InitialState,
}

impl SystemParams {
    pub fn builder() -> SystemParamsBuilder {
        SystemParamsBuilder::default()
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega_rabi(&self) -> f64 {
        self.omega_rabi
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn t_step(&self) -> f64 {
        self.t_step
    }

    pub fn initial_state(&self) -> InitialState {
        self.initial_state
    }

    /// The normalized initial state vector.
    pub fn initial_state_vector(&self) -> StateVector4 {
        self.initial_state
            .to_state()
            .expect("validated at construction")
    }

    /// Sampling times `t_start + k·t_step`, inclusive of `t_end` when it
    /// falls on the grid.
    pub fn time_grid(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        let n = (span / self.t_step + 1e-9).floor() as usize + 1;
        (0..n).map(|k| self.t_start + k as f64 * self.t_step).collect()
    }
}

/// Builder for [`SystemParams`]; defaults describe an undriven, resonant
/// system sampled every 0.5 fs from 0 to 500 fs starting in the vacuum.
#[derive(Debug, Clone)]
pub struct SystemParamsBuilder {
    eta: f64,
    omega_rabi: f64,
    delta: f64,
    phi: f64,
    tau: f64,
    t_start: f64,
    t_end: f64,
    t_step: f64,
    initial_state: InitialState,
}

impl Default for SystemParamsBuilder {
    fn default() -> Self {
        Self {
            eta: 0.0,
            omega_rabi: 0.0,
            delta: 0.0,
            phi: 0.0,
            tau: 0.0,
            t_start: 0.0,
            t_end: 500.0,
            t_step: 0.5,
            initial_state: InitialState::Vacuum,
        }
    }
}

impl SystemParamsBuilder {
    pub fn eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn omega_rabi(mut self, omega_rabi: f64) -> Self {
        self.omega_rabi = omega_rabi;
        self
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn t_start(mut self, t_start: f64) -> Self {
        self.t_start = t_start;
        self
    }

    pub fn t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    pub fn t_step(mut self, t_step: f64) -> Self {
        self.t_step = t_step;
        self
    }

    pub fn initial_state(mut self, initial_state: InitialState) -> Self {
        self.initial_state = initial_state;
        self
    }

    pub fn build(self) -> Result<SystemParams, ModelError> {
        for (name, value) in [
            ("eta", self.eta),
            ("omega_rabi", self.omega_rabi),
            ("delta", self.delta),
            ("phi", self.phi),
            ("tau", self.tau),
            ("t_start", self.t_start),
            ("t_end", self.t_end),
            ("t_step", self.t_step),
        ] {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { name, value });
            }
        }
        if self.omega_rabi < 0.0 {
            return Err(ModelError::NegativeRabi(self.omega_rabi));
        }
        // the step must also be representable against the grid's magnitude,
        // or samples would stop strictly increasing
        let t_scale = self.t_start.abs().max(self.t_end.abs());
        if self.t_end <= self.t_start
            || self.t_step <= 0.0
            || self.t_step <= 4.0 * f64::EPSILON * t_scale
        {
            return Err(ModelError::InvalidTimeGrid {
                t_start: self.t_start,
                t_end: self.t_end,
                t_step: self.t_step,
            });
        }
        let n = ((self.t_end - self.t_start) / self.t_step) as usize + 1;
        if n > MAX_GRID_POINTS {
            return Err(ModelError::GridTooFine(n));
        }
        let params = SystemParams {
            eta: self.eta,
            omega_rabi: self.omega_rabi,
            delta: self.delta,
            phi: self.phi,
            tau: self.tau,
            t_start: self.t_start,
            t_end: self.t_end,
            t_step: self.t_step,
            initial_state: self.initial_state,
        };
        params.initial_state.to_state()?;
        Ok(params)
    }
}

/// The effective 4×4 exciton-ladder Hamiltonian, rad/fs.
///
/// Hermitian with couplings only between adjacent exciton numbers, i.e. only
/// the tridiagonal band is nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian4 {
    elements: Mat4,
}

impl Hamiltonian4 {
    pub const BASIS_LABELS: [&'static str; 4] =
        ["vacuum", "single-exciton", "biexciton", "triexciton"];

    /// Largest allowed relative Hermitian-symmetry defect in
    /// [`Hamiltonian4::from_elements`].
    pub const HERMITICITY_TOLERANCE: f64 = 1e-14;

    /// Wraps an explicit matrix, enforcing Hermitian symmetry and the
    /// tridiagonal coupling band.
    pub fn from_elements(elements: Mat4) -> Result<Self, ModelError> {
        let scale = elements
            .iter()
            .flatten()
            .map(|e| e.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        for (row, row_vals) in elements.iter().enumerate() {
            for (col, &v) in row_vals.iter().enumerate() {
                if row.abs_diff(col) > 1 && v != ZERO {
                    return Err(ModelError::OutsideBand { row, col });
                }
                let deviation = (v - elements[col][row].conj()).norm();
                if deviation > Self::HERMITICITY_TOLERANCE * scale {
                    return Err(ModelError::NotHermitian {
                        row,
                        col,
                        deviation,
                    });
                }
            }
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &Mat4 {
        &self.elements
    }

    pub fn element(&self, row: usize, col: usize) -> C64 {
        self.elements[row][col]
    }

    /// Sum of the diagonal; equals 10η for any detuning (the Δ terms cancel).
    pub fn trace(&self) -> f64 {
        (0..4).map(|k| self.elements[k][k].re).sum()
    }
}

/// Builds the ladder Hamiltonian from physical parameters.
///
/// Matrix elements ξ_jk:
///
/// | element | value |
/// |---------|-------|
/// | ξ00 | 1.5(η − Δ) |
/// | ξ11 | 0.5(7η − Δ) |
/// | ξ22 | 0.5(7η + Δ) |
/// | ξ33 | 1.5(η + Δ) |
/// | ξ01 = ξ10* | √3 Ω e^{iφ} |
/// | ξ12 = ξ21* | 2 Ω e^{−iφ} |
/// | ξ23 = ξ32* | √3 Ω e^{−iφ} |
///
/// and every other element is exactly zero.
pub fn build_hamiltonian(params: &SystemParams) -> Hamiltonian4 {
    let eta = params.eta();
    let delta = params.delta();
    let omega = params.omega_rabi();
    let phase = C64::from_polar(1.0, params.phi());
    let sqrt3 = 3.0_f64.sqrt();

    let xi01 = sqrt3 * omega * phase;
    let xi12 = 2.0 * omega * phase.conj();
    let xi23 = sqrt3 * omega * phase.conj();

    let mut m = [[ZERO; 4]; 4];
    m[0][0] = C64::new(1.5 * (eta - delta), 0.0);
    m[1][1] = C64::new(0.5 * (7.0 * eta - delta), 0.0);
    m[2][2] = C64::new(0.5 * (7.0 * eta + delta), 0.0);
    m[3][3] = C64::new(1.5 * (eta + delta), 0.0);
    m[0][1] = xi01;
    m[1][0] = xi01.conj();
    m[1][2] = xi12;
    m[2][1] = xi12.conj();
    m[2][3] = xi23;
    m[3][2] = xi23.conj();
    Hamiltonian4 { elements: m }
}
