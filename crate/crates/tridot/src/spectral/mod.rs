//! Closed-form spectral propagation of the four-level ladder.
//!
//! The characteristic polynomial of the (optionally shifted and rescaled)
//! Hamiltonian is expanded in monomial form, its four real roots are taken
//! in radicals, eigenvectors come from null-space extraction per root, and
//! the amplitudes evolve as
//!
//! ```text
//! B_j(t) = Σ_k λ_{jk} · exp(−i e_k t),     λ_{jk} = O_{jk} (O⁻¹ B(0))_k
//! ```
//!
//! with unscaled eigenvalues e_k = shift + scale·μ_k. Propagation always
//! uses the unscaled e_k, so the Ω → 0 limit is regular; the dimensionless
//! μ_k are published only when the natural scale 2Ω is meaningfully nonzero.

mod quartic;

pub use quartic::{solve_quartic, QuarticCoefficients};

use crate::linalg::{adjoint, det4, dot, matmul, norm, solve4, trace, Mat4, Vec4, ONE, ZERO};
use crate::model::Hamiltonian4;
use crate::observables::StateVector4;
use crate::C64;
use thiserror::Error;

/// Scales at or below this (rad/fs) count as the degenerate Ω = 0 limit.
pub const SCALE_TOLERANCE: f64 = 1e-12;

/// Relative eigenvalue gap (fraction of the spectral width) below which
/// roots are clustered and their eigenvectors orthogonalized as one block.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("scale {0:.3e} rad/fs is at or below the degeneracy tolerance; use shift 0, scale 1")]
    DegenerateScale(f64),
    #[error("quartic root keeps imaginary magnitude {0:.3e} after cleanup; coefficients are not Hermitian-derived")]
    ComplexRootResidual(f64),
    #[error("non-finite quartic coefficient")]
    NonFiniteCoefficients,
}

fn shifted_scaled(h: &Hamiltonian4, shift: f64, scale: f64) -> Mat4 {
    let inv = C64::new(scale.recip(), 0.0);
    let mut m = *h.elements();
    for (k, row) in m.iter_mut().enumerate() {
        row[k] -= C64::new(shift, 0.0);
        for v in row.iter_mut() {
            *v *= inv;
        }
    }
    m
}

/// Monic characteristic polynomial of (H − shift·I)/scale.
///
/// Newton's identities turn the power traces of the matrix into the
/// elementary symmetric functions of its eigenvalues; the determinant closes
/// the constant term. All four are real for Hermitian input.
pub fn characteristic_coefficients(
    h: &Hamiltonian4,
    shift: f64,
    scale: f64,
) -> Result<QuarticCoefficients, SpectralError> {
    if scale.is_nan() || scale <= SCALE_TOLERANCE {
        return Err(SpectralError::DegenerateScale(scale));
    }
    let m = shifted_scaled(h, shift, scale);
    let m2 = matmul(&m, &m);
    let m3 = matmul(&m2, &m);
    let t1 = trace(&m).re;
    let t2 = trace(&m2).re;
    let t3 = trace(&m3).re;
    let e1 = t1;
    let e2 = 0.5 * (t1 * t1 - t2);
    let e3 = (t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0;
    let e4 = det4(&m).re;
    QuarticCoefficients::new(-e1, e2, -e3, e4)
}

/// Eigen-decomposition of the ladder Hamiltonian.
///
/// `eigenvalues` are ascending in rad/fs; the columns of `vectors` are the
/// matching orthonormal eigenvectors with their first significant component
/// made real-positive. `shift` (ξ11) and `scale` (|ξ21| = 2Ω) record the
/// natural reference energy and scale of the ladder; `scaled_eigenvalues`
/// holds the dimensionless μ_k = (e_k − shift)/scale whenever the scale is
/// above [`SCALE_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: [f64; 4],
    scaled_eigenvalues: Option<[f64; 4]>,
    vectors: Mat4,
    shift: f64,
    scale: f64,
}

impl SpectralDecomposition {
    /// Unscaled eigenvalues in rad/fs, ascending.
    pub fn eigenvalues(&self) -> &[f64; 4] {
        &self.eigenvalues
    }

    /// Dimensionless eigenvalues μ_k, present when 2Ω is above tolerance.
    pub fn scaled_eigenvalues(&self) -> Option<&[f64; 4]> {
        self.scaled_eigenvalues.as_ref()
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn vectors(&self) -> &Mat4 {
        &self.vectors
    }

    /// ξ11 reference energy, rad/fs.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// |ξ21| = 2Ω, rad/fs.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Mode weights λ_{jk} for a given initial state; row sums reproduce the
    /// initial amplitudes.
    ///
    /// The weights come from solving O·c = B(0) rather than forming an
    /// explicit inverse.
    pub fn mode_coefficients(&self, b0: &StateVector4) -> Mat4 {
        let c = solve4(&self.vectors, b0.amplitudes());
        let mut lambda = [[ZERO; 4]; 4];
        for j in 0..4 {
            for k in 0..4 {
                lambda[j][k] = self.vectors[j][k] * c[k];
            }
        }
        lambda
    }

    /// O·diag(e_k)·O†, which must reproduce the Hamiltonian.
    pub fn reconstruct(&self) -> Mat4 {
        let mut lam = [[ZERO; 4]; 4];
        for (k, row) in lam.iter_mut().enumerate() {
            row[k] = C64::new(self.eigenvalues[k], 0.0);
        }
        matmul(&matmul(&self.vectors, &lam), &adjoint(&self.vectors))
    }

    /// Largest entry of |O†O − I|, a direct unitarity diagnostic.
    pub fn unitarity_defect(&self) -> f64 {
        let g = matmul(&adjoint(&self.vectors), &self.vectors);
        let mut worst = 0.0_f64;
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((v - target).norm());
            }
        }
        worst
    }
}

/// Diagonalizes the Hamiltonian through the characteristic quartic.
///
/// When |ξ21| = 2Ω is above [`SCALE_TOLERANCE`] the quartic is solved in the
/// ladder's natural shifted/scaled variables (shift ξ11, scale 2Ω) and the
/// eigenvalues are mapped back as e_k = ξ11 + 2Ω·μ_k; otherwise the unscaled
/// polynomial is solved directly.
pub fn eigensystem(h: &Hamiltonian4) -> Result<SpectralDecomposition, SpectralError> {
    let shift = h.element(1, 1).re;
    let scale = h.element(2, 1).norm();
    let scaled = scale > SCALE_TOLERANCE;
    let (work_shift, work_scale) = if scaled { (shift, scale) } else { (0.0, 1.0) };
    let coeffs = characteristic_coefficients(h, work_shift, work_scale)?;
    let roots = solve_quartic(&coeffs)?;
    let eigenvalues = roots.map(|mu| work_shift + work_scale * mu);
    let m = shifted_scaled(h, work_shift, work_scale);
    let vectors = eigenvectors(&m, &roots);
    Ok(SpectralDecomposition {
        eigenvalues,
        scaled_eigenvalues: scaled.then_some(roots),
        vectors,
        shift,
        scale,
    })
}

/// Exact state at time `t` (fs) from the decomposition, as a sum of
/// interfering modes B_j(t) = Σ_k λ_{jk} exp(−i e_k t).
pub fn propagate_closed_form(
    sd: &SpectralDecomposition,
    b0: &StateVector4,
    t: f64,
) -> StateVector4 {
    let c = solve4(&sd.vectors, b0.amplitudes());
    let mut amps = [ZERO; 4];
    for k in 0..4 {
        let w = c[k] * C64::from_polar(1.0, -sd.eigenvalues[k] * t);
        for (a, row) in amps.iter_mut().zip(sd.vectors.iter()) {
            *a += row[k] * w;
        }
    }
    StateVector4::from_components(amps).expect("unitary evolution preserves the norm")
}

/// Assembles the orthonormal eigenvector columns for the given roots of the
/// working matrix `m`. Roots closer than [`DEGENERACY_TOLERANCE`] of the
/// spectral width form one block whose null space is extracted jointly.
fn eigenvectors(m: &Mat4, roots: &[f64; 4]) -> Mat4 {
    let width = roots[3] - roots[0];
    let cluster_tol = DEGENERACY_TOLERANCE * width;
    let mut cols: [Vec4; 4] = [[ZERO; 4]; 4];

    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && roots[end] - roots[end - 1] <= cluster_tol {
            end += 1;
        }
        let multiplicity = end - start;
        let mean = roots[start..end].iter().sum::<f64>() / multiplicity as f64;
        let mut block = null_space(m, mean, multiplicity);
        orthonormalize(&mut block);
        for (offset, v) in block.into_iter().enumerate() {
            cols[start + offset] = v;
        }
        start = end;
    }

    // Symmetric pairwise re-orthogonalization: residual overlaps between
    // *near*-degenerate (but unclustered) vectors shrink quadratically, and
    // splitting the correction evenly keeps both vectors unbiased.
    for _ in 0..2 {
        for i in 0..4 {
            for j in i + 1..4 {
                let s = dot(&cols[i], &cols[j]);
                if s.norm() <= 1e-15 {
                    continue;
                }
                let (a, b) = (cols[i], cols[j]);
                for k in 0..4 {
                    cols[i][k] = a[k] - 0.5 * s.conj() * b[k];
                    cols[j][k] = b[k] - 0.5 * s * a[k];
                }
                renormalize(&mut cols[i]);
                renormalize(&mut cols[j]);
            }
        }
    }

    let mut vectors = [[ZERO; 4]; 4];
    for (col, v) in cols.iter_mut().enumerate() {
        fix_phase(v);
        for (row, value) in v.iter().enumerate() {
            vectors[row][col] = *value;
        }
    }
    vectors
}

/// Null-space basis of (m − μ·I) with known nullity, by Gaussian elimination
/// with full pivoting: the expected rank fixes how many elimination steps to
/// take, so no rank threshold has to be guessed.
fn null_space(m: &Mat4, mu: f64, nullity: usize) -> Vec<Vec4> {
    let mut a = *m;
    for (k, row) in a.iter_mut().enumerate() {
        row[k] -= C64::new(mu, 0.0);
    }
    let rank = 4 - nullity;
    let mut col_perm = [0usize, 1, 2, 3];
    let mut effective_rank = rank;
    for step in 0..rank {
        let (mut pi, mut pj, mut best) = (step, step, -1.0_f64);
        for i in step..4 {
            for j in step..4 {
                let mag = a[i][j].norm_sqr();
                if mag > best {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best <= 0.0 {
            effective_rank = step;
            break;
        }
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        col_perm.swap(step, pj);
        let pivot = a[step][step];
        for i in step + 1..4 {
            let f = a[i][step] / pivot;
            if f == ZERO {
                continue;
            }
            for j in step..4 {
                let sub = f * a[step][j];
                a[i][j] -= sub;
            }
        }
    }

    let mut basis = Vec::with_capacity(nullity);
    for free in 4 - nullity..4 {
        let mut x = [ZERO; 4];
        x[free] = ONE;
        for k in (0..effective_rank).rev() {
            let mut acc = ZERO;
            for j in k + 1..4 {
                acc += a[k][j] * x[j];
            }
            x[k] = -acc / a[k][k];
        }
        let mut v = [ZERO; 4];
        for (permuted, &original) in col_perm.iter().enumerate() {
            v[original] = x[permuted];
        }
        basis.push(v);
    }
    basis
}

fn orthonormalize(basis: &mut [Vec4]) {
    for i in 0..basis.len() {
        for j in 0..i {
            let proj = dot(&basis[j], &basis[i]);
            let prev = basis[j];
            for (x, p) in basis[i].iter_mut().zip(prev.iter()) {
                *x -= proj * p;
            }
        }
        renormalize(&mut basis[i]);
    }
}

fn renormalize(v: &mut Vec4) {
    let n = norm(v);
    debug_assert!(n > 0.0, "null-space extraction produced a zero vector");
    let inv = C64::new(n.recip(), 0.0);
    for x in v.iter_mut() {
        *x *= inv;
    }
}

/// Makes the first component with magnitude above 1e-10 real-positive, so
/// eigenvector output is deterministic.
fn fix_phase(v: &mut Vec4) {
    if let Some(lead) = v.iter().find(|x| x.norm() > 1e-10) {
        let phase = lead.conj() / lead.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}
