//! Shared test support: an independent iterative Hermitian eigensolver
//! (cyclic complex Jacobi) used as the reference for the radical-based
//! solver, plus small helpers.
//!
//! The oracle is deliberately self-contained — its own matrix products and
//! rotations — so it shares no code path with the library's spectral module.

#![allow(clippy::needless_range_loop)]

use tridot::C64;

pub type Mat4 = [[C64; 4]; 4];

fn matmul(a: &Mat4, b: &Mat4) -> Mat4 {
    let zero = C64::new(0.0, 0.0);
    let mut out = [[zero; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = zero;
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn adjoint(m: &Mat4) -> Mat4 {
    let zero = C64::new(0.0, 0.0);
    let mut out = [[zero; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

/// Eigenvalues of a Hermitian 4×4 by cyclic complex Jacobi rotations,
/// ascending. Panics if a rotation fails to annihilate its pivot or the
/// iteration does not converge — both would mean the oracle itself is wrong.
pub fn jacobi_eigenvalues(m: &Mat4) -> [f64; 4] {
    let mut a = *m;
    let scale = a
        .iter()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0_f64, f64::max)
        .max(1e-300);

    let mut converged = false;
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..4 {
            for q in p + 1..4 {
                off = off.max(a[p][q].norm());
            }
        }
        if off <= 1e-14 * scale {
            converged = true;
            break;
        }
        for p in 0..4 {
            for q in p + 1..4 {
                let beta = a[p][q];
                let b = beta.norm();
                if b <= 1e-300 {
                    continue;
                }
                let u = beta / b;
                let alpha = a[p][p].re;
                let gamma = a[q][q].re;
                let tau = (gamma - alpha) / (2.0 * b);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = -sign / (tau.abs() + (tau * tau + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let zero = C64::new(0.0, 0.0);
                let one = C64::new(1.0, 0.0);
                let mut j = [[zero; 4]; 4];
                for k in 0..4 {
                    j[k][k] = one;
                }
                j[p][p] = C64::new(c, 0.0);
                j[p][q] = C64::new(-s, 0.0);
                j[q][p] = u.conj() * s;
                j[q][q] = u.conj() * c;

                a = matmul(&adjoint(&j), &matmul(&a, &j));
                assert!(
                    a[p][q].norm() <= 1e-12 * scale,
                    "jacobi rotation failed to annihilate its pivot"
                );
            }
        }
    }
    assert!(converged, "jacobi iteration did not converge in 60 sweeps");

    let mut eig = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    eig.sort_by(f64::total_cmp);
    eig
}

/// The working matrix (H − shift·I)/scale as plain data.
pub fn shifted_scaled_elements(h: &tridot::Hamiltonian4, shift: f64, scale: f64) -> Mat4 {
    let mut m = *h.elements();
    for (k, row) in m.iter_mut().enumerate() {
        row[k] -= C64::new(shift, 0.0);
        for v in row.iter_mut() {
            *v /= scale;
        }
    }
    m
}

#[allow(dead_code)]
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
