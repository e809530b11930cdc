//! The quaternionic cross-ratio and the family of 3-spheres and 3-planes
//! that fractional linear maps permute.
//!
//! `CR(q1, q2, q3, q4) = (q1 - q3)(q1 - q4)^-1 (q2 - q4)(q2 - q3)^-1`.
//!
//! When one argument is `∞` the two factors containing it are replaced by
//! `1`. For `q4 = ∞` this is the honest limit. In the other positions the
//! limit depends on the direction of approach, but only up to conjugation
//! `CR -> u CR u^-1`, which preserves `Re(CR)` and `|Im(CR)|`; those are the
//! only quantities the distance and concyclicity code reads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flt::{ExtQuaternion, Generator};
use crate::quat::Quaternion;
use crate::tol::Tolerance;

/// Relative separation below which two points count as the same point.
const COINCIDENT_EPS: f64 = 1e-14;

fn coincident(p: &ExtQuaternion, q: &ExtQuaternion) -> bool {
    match (p, q) {
        (ExtQuaternion::Infinity, ExtQuaternion::Infinity) => true,
        (ExtQuaternion::Finite(a), ExtQuaternion::Finite(b)) => {
            (*a - *b).norm() <= COINCIDENT_EPS * (1.0 + a.norm().max(b.norm()))
        }
        _ => false,
    }
}

/// Cross-ratio on `H ∪ {∞}`. `q1 = q2` is allowed and yields `1`.
pub fn cross_ratio(
    q1: ExtQuaternion,
    q2: ExtQuaternion,
    q3: ExtQuaternion,
    q4: ExtQuaternion,
) -> Result<ExtQuaternion> {
    use ExtQuaternion::{Finite, Infinity};
    let pts = [q1, q2, q3, q4];
    for i in 0..4 {
        for j in i + 1..4 {
            if (i, j) != (0, 1) && coincident(&pts[i], &pts[j]) {
                return Err(Error::CoincidentPoints);
            }
        }
    }
    if coincident(&q1, &q2) {
        return Ok(Finite(Quaternion::ONE));
    }
    let cr = match (q1, q2, q3, q4) {
        (Finite(a), Finite(b), Finite(c), Finite(d)) => (a - c) * (a - d).inv() * (b - d) * (b - c).inv(),
        (Finite(a), Finite(b), Finite(c), Infinity) => (a - c) * (b - c).inv(),
        (Finite(a), Finite(b), Infinity, Finite(d)) => (a - d).inv() * (b - d),
        (Infinity, Finite(b), Finite(c), Finite(d)) => (b - d) * (b - c).inv(),
        (Finite(a), Infinity, Finite(c), Finite(d)) => (a - c) * (a - d).inv(),
        _ => return Err(Error::CoincidentPoints),
    };
    Ok(Finite(cr))
}

/// Cross-ratio of four finite points.
pub fn cross_ratio_finite(q1: Quaternion, q2: Quaternion, q3: Quaternion, q4: Quaternion) -> Result<Quaternion> {
    let cr = cross_ratio(q1.into(), q2.into(), q3.into(), q4.into())?;
    Ok(cr.finite().expect("finite inputs give a finite cross-ratio"))
}

fn real_within(cr: &Quaternion, tol: f64) -> bool {
    cr.im().norm() <= tol * (1.0 + cr.norm())
}

/// Whether the four points lie on one circle or affine line.
pub fn is_concyclic(q1: Quaternion, q2: Quaternion, q3: Quaternion, q4: Quaternion, tol: f64) -> Result<bool> {
    for (i, a) in [q1, q2, q3, q4].iter().enumerate() {
        for b in [q1, q2, q3, q4].iter().skip(i + 1) {
            if coincident(&(*a).into(), &(*b).into()) {
                return Err(Error::CoincidentPoints);
            }
        }
    }
    Ok(real_within(&cross_ratio_finite(q1, q2, q3, q4)?, tol))
}

/// Whether the pairs `{q1, q2}` and `{q3, q4}` interleave on their common
/// circle.
pub fn separates(q1: Quaternion, q2: Quaternion, q3: Quaternion, q4: Quaternion) -> Result<bool> {
    let cr = cross_ratio_finite(q1, q2, q3, q4)?;
    if !real_within(&cr, Tolerance::default().atol) {
        return Err(Error::NotConcyclic);
    }
    Ok(cr.re() < 0.0)
}

/// Zero set of `α |q|^2 + β q + conj(q) conj(β) + γ = 0`, with `α, γ` real.
///
/// `α = 0` gives an affine 3-plane, otherwise a 3-sphere (possibly empty or
/// a single point).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricF3 {
    pub alpha: f64,
    pub beta: Quaternion,
    pub gamma: f64,
}

impl QuadricF3 {
    pub fn new(alpha: f64, beta: Quaternion, gamma: f64) -> Result<Self> {
        if alpha == 0.0 && beta.is_zero() && gamma == 0.0 {
            return Err(Error::DegenerateResult);
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Sphere `|q - center| = radius`.
    pub fn sphere(center: Quaternion, radius: f64) -> Self {
        Self {
            alpha: 1.0,
            beta: -center.conj(),
            gamma: center.norm_sq() - radius * radius,
        }
    }

    /// Plane `Re(conj(n) q) = offset`.
    pub fn plane(normal: Quaternion, offset: f64) -> Self {
        Self {
            alpha: 0.0,
            beta: normal.conj().scale(0.5),
            gamma: -offset,
        }
    }

    pub fn is_plane(&self) -> bool {
        self.alpha == 0.0
    }

    /// Centre and squared radius of a sphere; `None` for planes.
    pub fn center_radius_sq(&self) -> Option<(Quaternion, f64)> {
        if self.is_plane() {
            return None;
        }
        let center = -self.beta.conj().scale(1.0 / self.alpha);
        Some((center, center.norm_sq() - self.gamma / self.alpha))
    }

    /// Left-hand side of the defining equation (always real).
    pub fn evaluate(&self, q: &Quaternion) -> f64 {
        self.alpha * q.norm_sq() + 2.0 * (self.beta * *q).re() + self.gamma
    }

    fn coefficients(&self) -> [f64; 6] {
        let b = self.beta;
        [self.alpha, b.w, b.x, b.y, b.z, self.gamma]
    }

    /// Same zero set: coefficient vectors proportional up to a nonzero real.
    pub fn projectively_eq(&self, other: &QuadricF3, tol: f64) -> bool {
        let unit = |v: [f64; 6]| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / n)
        };
        let (u, v) = (unit(self.coefficients()), unit(other.coefficients()));
        let diff = |s: f64| u.iter().zip(&v).map(|(a, b)| (a - s * b).abs()).fold(0.0, f64::max);
        diff(1.0).min(diff(-1.0)) <= tol
    }
}

/// Whether `q` lies on the zero set of `quadric`.
pub fn on_quadric(q: &Quaternion, quadric: &QuadricF3, tol: f64) -> bool {
    let n = q.norm();
    let scale = quadric.alpha.abs() * n * n + 2.0 * quadric.beta.norm() * n + quadric.gamma.abs();
    quadric.evaluate(q).abs() <= tol * (1.0 + scale)
}

/// Image of the zero set of `quadric` under `g`.
///
/// Substitutes `g^-1(p)` into the equation and clears the positive factor
/// that appears.
pub fn transform_quadric(g: &Generator, quadric: &QuadricF3) -> Result<QuadricF3> {
    let QuadricF3 { alpha, beta, gamma } = *quadric;
    let image = match *g {
        Generator::Translation { b } => QuadricF3 {
            alpha,
            beta: beta - b.conj().scale(alpha),
            gamma: alpha * b.norm_sq() - 2.0 * (beta * b).re() + gamma,
        },
        Generator::Rotation { a } => QuadricF3 {
            alpha,
            beta: beta * a.conj(),
            gamma: gamma * a.norm_sq(),
        },
        Generator::Dilation { r } => QuadricF3 {
            alpha,
            beta: beta.scale(r),
            gamma: gamma * r * r,
        },
        Generator::Inversion => QuadricF3 {
            alpha: gamma,
            beta: beta.conj(),
            gamma: alpha,
        },
    };
    let scale = alpha.abs().max(beta.norm()).max(gamma.abs());
    let tol = Tolerance::default();
    if tol.is_small(image.alpha, scale) && tol.is_small(image.beta.norm(), scale) && tol.is_small(image.gamma, scale) {
        return Err(Error::DegenerateResult);
    }
    Ok(image)
}
