//! Small fixed-size complex linear algebra used by the propagators.
//!
//! Everything here is 4×4 / 4-vector only; there is no reason to pull in a
//! general-purpose linear algebra crate for a single hard-coded dimension.

use crate::C64;

pub type Vec4 = [C64; 4];
pub type Mat4 = [[C64; 4]; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn zeros() -> Mat4 {
    [[ZERO; 4]; 4]
}

#[cfg(test)]
pub fn identity() -> Mat4 {
    let mut m = zeros();
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = ONE;
    }
    m
}

pub fn matvec(m: &Mat4, v: &Vec4) -> Vec4 {
    let mut out = [ZERO; 4];
    for (o, row) in out.iter_mut().zip(m.iter()) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    out
}

pub fn matmul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = zeros();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint(m: &Mat4) -> Mat4 {
    let mut out = zeros();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

pub fn trace(m: &Mat4) -> C64 {
    m[0][0] + m[1][1] + m[2][2] + m[3][3]
}

pub fn dot(a: &Vec4, b: &Vec4) -> C64 {
    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2] + a[3].conj() * b[3]
}

pub fn norm(v: &Vec4) -> f64 {
    dot(v, v).re.max(0.0).sqrt()
}

fn det3(m: [[C64; 3]; 3]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant by Laplace expansion along the first row.
pub fn det4(m: &Mat4) -> C64 {
    let mut det = ZERO;
    let mut sign = 1.0;
    for col in 0..4 {
        let mut minor = [[ZERO; 3]; 3];
        for (mi, row) in m.iter().skip(1).enumerate() {
            let mut mj = 0;
            for (j, &v) in row.iter().enumerate() {
                if j == col {
                    continue;
                }
                minor[mi][mj] = v;
                mj += 1;
            }
        }
        det += C64::new(sign, 0.0) * m[0][col] * det3(minor);
        sign = -sign;
    }
    det
}

/// Solves `a · x = b` by Gaussian elimination with partial pivoting.
///
/// Panics on an (to working precision) singular matrix; callers in this crate
/// only pass unitary eigenvector matrices.
pub fn solve4(a: &Mat4, b: &Vec4) -> Vec4 {
    let mut m = *a;
    let mut rhs = *b;
    for k in 0..4 {
        let mut pivot = k;
        for i in k + 1..4 {
            if m[i][k].norm_sqr() > m[pivot][k].norm_sqr() {
                pivot = i;
            }
        }
        m.swap(k, pivot);
        rhs.swap(k, pivot);
        assert!(
            m[k][k].norm_sqr() > 0.0,
            "singular matrix in 4x4 linear solve"
        );
        for i in k + 1..4 {
            let f = m[i][k] / m[k][k];
            if f == ZERO {
                continue;
            }
            for j in k..4 {
                let sub = f * m[k][j];
                m[i][j] -= sub;
            }
            let sub = f * rhs[k];
            rhs[i] -= sub;
        }
    }
    let mut x = [ZERO; 4];
    for k in (0..4).rev() {
        let mut acc = rhs[k];
        for j in k + 1..4 {
            acc -= m[k][j] * x[j];
        }
        x[k] = acc / m[k][k];
    }
    x
}
