//! Quartic solver in radicals, specialized to characteristic polynomials of
//! Hermitian matrices: the contract is exactly four real roots.
//!
//! The depressed quartic is split into two real quadratics through the
//! resolvent cubic (Ferrari), every root is then polished with a few Newton
//! steps on the original polynomial. Inputs whose roots are genuinely
//! complex are rejected rather than silently truncated.

use super::SpectralError;

/// Coefficients of the monic quartic μ⁴ + r1·μ³ + r2·μ² + r3·μ + r4 = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoefficients {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
}

impl QuarticCoefficients {
    pub fn new(r1: f64, r2: f64, r3: f64, r4: f64) -> Result<Self, SpectralError> {
        if [r1, r2, r3, r4].iter().all(|r| r.is_finite()) {
            Ok(Self { r1, r2, r3, r4 })
        } else {
            Err(SpectralError::NonFiniteCoefficients)
        }
    }

    pub fn evaluate(&self, mu: f64) -> f64 {
        (((mu + self.r1) * mu + self.r2) * mu + self.r3) * mu + self.r4
    }

    pub fn derivative(&self, mu: f64) -> f64 {
        ((4.0 * mu + 3.0 * self.r1) * mu + 2.0 * self.r2) * mu + self.r3
    }

    /// Fujiwara bound: every root of the monic quartic has
    /// |μ| ≤ 2·max(|r1|, |r2|^½, |r3|^⅓, (|r4|/2)^¼).
    fn root_bound(&self) -> f64 {
        let b = self
            .r1
            .abs()
            .max(self.r2.abs().sqrt())
            .max(self.r3.abs().cbrt())
            .max((self.r4.abs() / 2.0).powf(0.25));
        (2.0 * b).max(1.0)
    }
}

/// Solves the quartic, returning its four real roots sorted ascending.
///
/// An input that keeps an implied imaginary magnitude above 1e-9 (relative
/// to the root bound) after the Hermitian-input cleanup is reported as
/// [`SpectralError::ComplexRootResidual`].
pub fn solve_quartic(c: &QuarticCoefficients) -> Result<[f64; 4], SpectralError> {
    let bound = c.root_bound();
    let imag_tol = 1e-9 * bound;

    // depress: μ = y − r1/4
    let a = c.r1;
    let shift = a / 4.0;
    let p = c.r2 - 0.375 * a * a;
    let q = c.r3 - 0.5 * a * c.r2 + 0.125 * a * a * a;
    let r = c.r4 - 0.25 * a * c.r3 + 0.0625 * a * a * c.r2 - (3.0 / 256.0) * a.powi(4);

    let ys = if q.abs() <= 1e-14 * bound.powi(3) {
        solve_biquadratic(p, r, imag_tol, bound)?
    } else {
        solve_ferrari(p, q, r, imag_tol, bound)?
    };

    let mut roots = ys.map(|y| y - shift);
    for root in roots.iter_mut() {
        polish(c, bound, root);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// y⁴ + p·y² + r = 0 via the quadratic in z = y².
///
/// Near a multiple root the coefficients only determine the roots to
/// O(√ε)·bound, so z-discriminants within that noise of zero are cleaned up
/// to exact doubles rather than reported as complex.
fn solve_biquadratic(p: f64, r: f64, imag_tol: f64, bound: f64) -> Result<[f64; 4], SpectralError> {
    let b2 = bound * bound;
    let z_noise = 256.0 * f64::EPSILON * b2;
    let mut disc = p * p - 4.0 * r;
    if disc < 0.0 {
        // complex pair z = x ± i·w implies |Im y| = sqrt((|z| − x)/2) exactly
        let x = -p / 2.0;
        let w = (-disc).sqrt() / 2.0;
        let imag_y = (((x * x + w * w).sqrt() - x).max(0.0) / 2.0).sqrt();
        if imag_y > imag_tol && -disc > 256.0 * f64::EPSILON * b2 * b2 {
            return Err(SpectralError::ComplexRootResidual(imag_y));
        }
        disc = 0.0;
    }
    let sq = disc.sqrt();
    let (z1, z2) = if p == 0.0 {
        (-sq / 2.0, sq / 2.0)
    } else {
        let big = -(p + p.signum() * sq) / 2.0;
        let small = if big != 0.0 { r / big } else { 0.0 };
        (big, small)
    };
    let mut ys = [0.0; 4];
    for (slot, z) in [z1, z2].into_iter().enumerate() {
        let z = if z < 0.0 {
            let imag = (-z).sqrt();
            if imag > imag_tol && -z > z_noise {
                return Err(SpectralError::ComplexRootResidual(imag));
            }
            0.0
        } else {
            z
        };
        let y = z.sqrt();
        ys[2 * slot] = -y;
        ys[2 * slot + 1] = y;
    }
    Ok(ys)
}

/// General depressed case, split through the resolvent cubic
/// m³ + 2p·m² + (p² − 4r)·m − q² = 0: the largest resolvent root is
/// nonnegative exactly when the quartic factors into two real quadratics.
fn solve_ferrari(p: f64, q: f64, r: f64, imag_tol: f64, bound: f64) -> Result<[f64; 4], SpectralError> {
    let m = largest_cubic_root(2.0 * p, p * p - 4.0 * r, -q * q);
    let m_noise = 256.0 * f64::EPSILON * bound * bound;
    if m <= 0.0 {
        if m >= -m_noise.max(imag_tol * imag_tol) {
            return solve_biquadratic(p, r, imag_tol, bound);
        }
        return Err(SpectralError::ComplexRootResidual((-m).sqrt()));
    }
    let alpha = m.sqrt();
    let s = q / alpha;
    let beta = 0.5 * (p + m - s);
    let gamma = 0.5 * (p + m + s);
    let disc_floor = 256.0 * f64::EPSILON * bound * bound;
    let (y1, y2) = quadratic_roots(alpha, beta, imag_tol, disc_floor)?;
    let (y3, y4) = quadratic_roots(-alpha, gamma, imag_tol, disc_floor)?;
    Ok([y1, y2, y3, y4])
}

/// Real roots of y² + b·y + c = 0 with the cancellation-free formula.
/// A negative discriminant is clamped to zero when the implied imaginary
/// part stays below `imag_clamp` or the discriminant sits within
/// `disc_floor` of zero (indistinguishable from a double root at working
/// precision), and rejected otherwise.
fn quadratic_roots(
    b: f64,
    c: f64,
    imag_clamp: f64,
    disc_floor: f64,
) -> Result<(f64, f64), SpectralError> {
    let mut disc = b * b - 4.0 * c;
    if disc < 0.0 {
        let imag = (-disc).sqrt() / 2.0;
        if imag > imag_clamp && -disc > disc_floor {
            return Err(SpectralError::ComplexRootResidual(imag));
        }
        disc = 0.0;
    }
    let sq = disc.sqrt();
    if b == 0.0 {
        return Ok((-sq / 2.0, sq / 2.0));
    }
    let big = -(b + b.signum() * sq) / 2.0;
    let small = if big != 0.0 { c / big } else { 0.0 };
    Ok(if big <= small { (big, small) } else { (small, big) })
}

/// Largest real root of m³ + a2·m² + a1·m + a0 = 0.
fn largest_cubic_root(a2: f64, a1: f64, a0: f64) -> f64 {
    // depress: m = t − a2/3
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let disc = 0.25 * q * q + p * p * p / 27.0;
    let t = if disc <= 0.0 {
        // three real roots; the k = 0 trigonometric branch is the largest
        let rho = (-p / 3.0).max(0.0).sqrt();
        if rho == 0.0 {
            0.0
        } else {
            let cos_arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
            2.0 * rho * (cos_arg.acos() / 3.0).cos()
        }
    } else {
        let sq = disc.sqrt();
        (-0.5 * q + sq).cbrt() + (-0.5 * q - sq).cbrt()
    };
    let mut m = t - a2 / 3.0;
    for _ in 0..3 {
        let f = ((m + a2) * m + a1) * m + a0;
        let df = (3.0 * m + 2.0 * a2) * m + a1;
        if df == 0.0 {
            break;
        }
        let step = f / df;
        if !step.is_finite() {
            break;
        }
        m -= step;
    }
    m
}

/// Safeguarded Newton refinement on the full quartic: a step is kept only
/// when it actually reduces the residual, so noise-dominated derivatives at
/// multiple roots cannot push a good root away.
fn polish(c: &QuarticCoefficients, bound: f64, root: &mut f64) {
    let mut best = *root;
    let mut best_residual = c.evaluate(best).abs();
    let mut x = best;
    for _ in 0..3 {
        let df = c.derivative(x);
        if df == 0.0 {
            break;
        }
        let step = c.evaluate(x) / df;
        if !step.is_finite() || step.abs() > 0.1 * bound {
            break;
        }
        x -= step;
        let residual = c.evaluate(x).abs();
        if residual < best_residual {
            best = x;
            best_residual = residual;
        } else {
            break;
        }
    }
    *root = best;
}
