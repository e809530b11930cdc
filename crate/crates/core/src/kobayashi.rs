//! Poincaré distance of the quaternionic ball against the Kobayashi
//! distance of the complex ball `B^2`, under `H = C + Cj`.
//!
//! Both distances agree on pairs through the origin. Moving a pair
//! `(α, βj)` to the origin by each structure's own Moebius maps gives
//! different image moduli, so the identity is not an isometry.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flt::Flt;
use crate::hypgeo::distance_disc;
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;

/// A point `(z, w)` of `C^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub z: Complex64,
    pub w: Complex64,
}

impl ComplexPair {
    pub fn new(z: Complex64, w: Complex64) -> Self {
        Self { z, w }
    }

    pub fn norm_sq(&self) -> f64 {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    pub fn in_ball(&self) -> bool {
        self.norm_sq() < 1.0
    }
}

/// `(w + xi) + (y + zi) j  ->  (w + xi, y + zi)`.
pub fn to_c2(q: &Quaternion) -> ComplexPair {
    ComplexPair::new(Complex64::new(q.w, q.x), Complex64::new(q.y, q.z))
}

pub fn from_c2(p: &ComplexPair) -> Quaternion {
    Quaternion::new(p.z.re, p.z.im, p.w.re, p.w.im)
}

/// `k(0, q) = artanh |q|`.
pub fn kobayashi_from_origin(q: &Quaternion) -> Result<f64> {
    let r = q.norm();
    if !(r < 1.0) {
        return Err(Error::OutOfDomain(format!("{q} is not in the open unit ball")));
    }
    Ok(r.atanh())
}

fn check_unit_disc(c: Complex64, name: &str) -> Result<()> {
    if c.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("|{name}| must be < 1")))
    }
}

/// `(|α|^2 + |β|^2) / (1 + |α|^2 |β|^2)`.
pub fn poincare_image_closed(alpha: Complex64, beta: Complex64) -> f64 {
    let (a, b) = (alpha.norm_sqr(), beta.norm_sqr());
    (a + b) / (1.0 + a * b)
}

/// `|α|^2 + (1 - |α|^2) |β|^2`.
pub fn kobayashi_image_closed(alpha: Complex64, beta: Complex64) -> f64 {
    let (a, b) = (alpha.norm_sqr(), beta.norm_sqr());
    a + (1.0 - a) * b
}

/// `|M(βj)|^2` for `M(q) = (q - α)(1 - conj(α) q)^-1`, evaluated as a
/// fractional linear map.
pub fn poincare_image_direct(alpha: Complex64, beta: Complex64) -> Result<f64> {
    let a = from_c2(&ComplexPair::new(alpha, Complex64::new(0.0, 0.0)));
    let m = Flt::new(Mat2H::new(Quaternion::ONE, -a, -a.conj(), Quaternion::ONE))?;
    let point = from_c2(&ComplexPair::new(Complex64::new(0.0, 0.0), beta));
    let image = m
        .apply_finite(point)
        .ok_or_else(|| Error::InternalNumeric("ball point hit a pole".into()))?;
    Ok(image.norm_sq())
}

/// The automorphism of `B^2` exchanging `(α, 0)` and the origin:
/// `((α, 0) - (z, 0) - sqrt(1 - |α|^2)(0, w)) / (1 - z conj(α))`.
pub fn phi(alpha: Complex64, p: &ComplexPair) -> ComplexPair {
    let s = (1.0 - alpha.norm_sqr()).sqrt();
    let den = 1.0 - p.z * alpha.conj();
    ComplexPair::new((alpha - p.z) / den, -(p.w * s) / den)
}

/// `|φ_(α,0)(0, β)|^2` by evaluating `φ`.
pub fn kobayashi_image_direct(alpha: Complex64, beta: Complex64) -> f64 {
    phi(alpha, &ComplexPair::new(Complex64::new(0.0, 0.0), beta)).norm_sq()
}

/// Disagreement allowed between the closed form and direct evaluation.
const DUAL_PATH_TOL: f64 = 1e-10;

fn dual(closed: f64, direct: f64) -> Result<f64> {
    if (closed - direct).abs() > DUAL_PATH_TOL {
        return Err(Error::InternalNumeric(format!("closed form {closed} vs direct {direct}")));
    }
    Ok(closed)
}

/// Squared modulus of the Poincaré image of `βj` after moving `α` to 0.
pub fn poincare_image_modulus_sq(alpha: Complex64, beta: Complex64) -> Result<f64> {
    check_unit_disc(alpha, "alpha")?;
    check_unit_disc(beta, "beta")?;
    dual(poincare_image_closed(alpha, beta), poincare_image_direct(alpha, beta)?)
}

/// Squared modulus of the Kobayashi image of `(0, β)` after moving `(α, 0)`
/// to the origin.
pub fn kobayashi_image_modulus_sq(alpha: Complex64, beta: Complex64) -> Result<f64> {
    check_unit_disc(alpha, "alpha")?;
    check_unit_disc(beta, "beta")?;
    dual(kobayashi_image_closed(alpha, beta), kobayashi_image_direct(alpha, beta))
}

/// `Q - C = ab(1 - a)(1 - b) / (1 + ab)` with `a = |α|^2`, `b = |β|^2`.
pub fn gap_closed(alpha: Complex64, beta: Complex64) -> f64 {
    let (a, b) = (alpha.norm_sqr(), beta.norm_sqr());
    a * b * (1.0 - a) * (1.0 - b) / (1.0 + a * b)
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPoint {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub gap: f64,
    /// `artanh(sqrt(Q))`, the Poincaré distance between the two points.
    pub poincare_distance: f64,
    /// `artanh(sqrt(C))`, the Kobayashi distance between the two points.
    pub kobayashi_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub witness: WitnessPoint,
    pub grid_max_gap: f64,
    pub grid: usize,
    /// Largest `|gap|` on the rows `α = 0` and `β = 0`.
    pub grid_axis_max_gap: f64,
    /// Smallest gap with both moduli nonzero.
    pub grid_min_off_axis_gap: f64,
}

/// Evaluates both image moduli at a point.
pub fn witness_at(alpha: Complex64, beta: Complex64) -> Result<WitnessPoint> {
    let q = poincare_image_modulus_sq(alpha, beta)?;
    let c = kobayashi_image_modulus_sq(alpha, beta)?;
    Ok(WitnessPoint {
        alpha: [alpha.re, alpha.im],
        beta: [beta.re, beta.im],
        q,
        c,
        gap: q - c,
        poincare_distance: q.sqrt().atanh(),
        kobayashi_distance: c.sqrt().atanh(),
    })
}

/// The witness at `α = β = 0.5` plus a scan of moduli `k / n`,
/// `k = 0..n`, for both `|α|` and `|β|`.
pub fn non_isometry_witness(n: usize) -> Result<WitnessReport> {
    let half = Complex64::new(0.5, 0.0);
    let witness = witness_at(half, half)?;
    let n = n.max(2);
    let mut max_gap = 0.0f64;
    let mut axis_gap = 0.0f64;
    let mut min_off_axis = f64::INFINITY;
    for i in 0..n {
        for k in 0..n {
            let alpha = Complex64::new(i as f64 / n as f64, 0.0);
            // a rotated β exercises the complex phase without changing the moduli
            let beta = Complex64::from_polar(k as f64 / n as f64, 0.3 * k as f64);
            let gap = poincare_image_modulus_sq(alpha, beta)? - kobayashi_image_modulus_sq(alpha, beta)?;
            max_gap = max_gap.max(gap);
            if i == 0 || k == 0 {
                axis_gap = axis_gap.max(gap.abs());
            } else {
                min_off_axis = min_off_axis.min(gap);
            }
        }
    }
    Ok(WitnessReport {
        witness,
        grid_max_gap: max_gap,
        grid: n,
        grid_axis_max_gap: axis_gap,
        grid_min_off_axis_gap: min_off_axis,
    })
}

/// `k(0, q)` and `δ(0, q)` side by side.
pub fn origin_coincidence(q: &Quaternion) -> Result<(f64, f64)> {
    Ok((kobayashi_from_origin(q)?, distance_disc(Quaternion::ZERO, *q)?))
}
