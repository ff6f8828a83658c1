//! Measurable quantities of a ladder state: populations, norm, and the
//! GHZ-overlap probability ℘(GHZ).
//!
//! The GHZ reference state is (|000⟩ + e^{iτ}|111⟩)/√2, which in the ladder
//! basis reads (|0⟩ + e^{iτ}|3⟩)/√2: the three-dot vacuum is |000⟩ and the
//! triexciton state is |111⟩.

use crate::linalg::Vec4;
use crate::C64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("state norm² = {0} differs from 1 beyond the allowed tolerance")]
    NotNormalized(f64),
    #[error("cannot normalize a zero or non-finite amplitude vector")]
    Degenerate,
}

/// A normalized four-component ladder state (B0, B1, B2, B3).
///
/// Construction enforces ‖B‖² = 1 within 1e-9; raw `[C64; 4]` arrays are the
/// unvalidated intermediate form used inside the propagators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector4 {
    amps: Vec4,
}

impl StateVector4 {
    /// Norm tolerance accepted by [`StateVector4::from_components`].
    pub const NORM_TOLERANCE: f64 = 1e-9;

    fn basis(k: usize) -> Self {
        let mut amps = [C64::new(0.0, 0.0); 4];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// |0⟩, the zero-exciton vacuum.
    pub fn vacuum() -> Self {
        Self::basis(0)
    }

    /// |1⟩, the single-exciton state.
    pub fn single_exciton() -> Self {
        Self::basis(1)
    }

    /// |2⟩, the biexciton state.
    pub fn biexciton() -> Self {
        Self::basis(2)
    }

    /// |3⟩, the triexciton state.
    pub fn triexciton() -> Self {
        Self::basis(3)
    }

    /// Rescales arbitrary amplitudes to unit norm.
    pub fn normalized(amps: [C64; 4]) -> Result<Self, StateError> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || norm_sqr <= 0.0 {
            return Err(StateError::Degenerate);
        }
        let inv = norm_sqr.sqrt().recip();
        Ok(Self {
            amps: amps.map(|a| a * inv),
        })
    }

    /// Accepts amplitudes that are already normalized to within
    /// [`Self::NORM_TOLERANCE`], without rescaling them.
    pub fn from_components(amps: [C64; 4]) -> Result<Self, StateError> {
        Self::from_components_tol(amps, Self::NORM_TOLERANCE)
    }

    pub(crate) fn from_components_tol(amps: [C64; 4], tol: f64) -> Result<Self, StateError> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() {
            return Err(StateError::Degenerate);
        }
        if (norm_sqr - 1.0).abs() > tol {
            return Err(StateError::NotNormalized(norm_sqr));
        }
        Ok(Self { amps })
    }

    pub fn amplitudes(&self) -> &Vec4 {
        &self.amps
    }

    pub fn amplitude(&self, k: usize) -> C64 {
        self.amps[k]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// GHZ proximity summary for one state at one reference phase τ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzReport {
    /// ℘(GHZ) at the requested τ.
    pub p_ghz: f64,
    /// ℘(GHZ) maximized over τ, i.e. ½(|B0| + |B3|)².
    pub p_ghz_max: f64,
    /// The phase achieving the maximum, arg(B3) − arg(B0).
    pub tau_star: f64,
    /// |B1|² + |B2|²: population outside the GHZ manifold. A state is close
    /// to a GHZ state only when `p_ghz` is near 0.5 *and* this is near zero;
    /// the bare overlap is ambiguous (the vacuum alone also gives ℘ = 0.5).
    pub residual_population: f64,
}

fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// ℘(GHZ) = |⟨GHZ_τ|Ψ⟩|² = ½|B0 + e^{−iτ}B3|².
pub fn ghz_probability(state: &StateVector4, tau: f64) -> f64 {
    let overlap = state.amplitude(0) + C64::from_polar(1.0, -tau) * state.amplitude(3);
    clamp_probability(0.5 * overlap.norm_sqr())
}

/// ℘(GHZ) maximized over the reference phase, with the maximizing τ.
///
/// Returns (½(|B0| + |B3|)², arg(B3) − arg(B0)); when B3 = 0 the phase is
/// immaterial and 0 is returned by convention.
pub fn ghz_probability_max(state: &StateVector4) -> (f64, f64) {
    let b0 = state.amplitude(0);
    let b3 = state.amplitude(3);
    let r = b0.norm() + b3.norm();
    let tau_star = if b3.norm() == 0.0 {
        0.0
    } else {
        b3.arg() - b0.arg()
    };
    (clamp_probability(0.5 * r * r), tau_star)
}

/// Occupation probabilities (|B0|², |B1|², |B2|², |B3|²).
pub fn populations(state: &StateVector4) -> [f64; 4] {
    state.amplitudes().map(|a| a.norm_sqr())
}

/// Full GHZ diagnostic at a given τ.
pub fn ghz_report(state: &StateVector4, tau: f64) -> GhzReport {
    let (p_ghz_max, tau_star) = ghz_probability_max(state);
    let pops = populations(state);
    GhzReport {
        p_ghz: ghz_probability(state, tau),
        p_ghz_max,
        tau_star,
        residual_population: pops[1] + pops[2],
    }
}
