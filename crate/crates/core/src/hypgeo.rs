//! Non-Euclidean lines and the Poincaré distance on the unit ball `Δ` and
//! on the right half-space `H+ = {Re q > 0}`.

use serde::Serialize;

use crate::crossratio::cross_ratio;
use crate::error::{Error, Result};
use crate::flt::{apply_matrix, ExtQuaternion, Flt};
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;
use crate::tol::Tolerance;

/// Matrix of `ψ^-1(p) = (p - 1)(p + 1)^-1`.
const CAYLEY_INV: Mat2H = Mat2H::from_reals(1.0, -1.0, 1.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiscKind {
    Diameter,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HalfspaceKind {
    HalfLine,
    Arc,
}

/// The non-Euclidean line through `q1` and `q2` with its ends on the unit
/// sphere: `q3` lies beyond `q2`, `q4` beyond `q1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicDisc {
    pub q1: Quaternion,
    pub q2: Quaternion,
    pub q3: Quaternion,
    pub q4: Quaternion,
    pub kind: DiscKind,
}

/// Half-space counterpart of [`GeodesicDisc`]; finite ends are purely
/// imaginary and at most one end is `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicHalfspace {
    pub q1: Quaternion,
    pub q2: Quaternion,
    pub e3: ExtQuaternion,
    pub e4: ExtQuaternion,
    pub kind: HalfspaceKind,
}

fn check_disc(q: &Quaternion) -> Result<()> {
    if q.is_finite() && q.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("{q} is not in the open unit ball")))
    }
}

fn check_halfspace(q: &Quaternion) -> Result<()> {
    if q.is_finite() && q.re() > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("{q} is not in the right half-space")))
    }
}

fn distinct(q1: &Quaternion, q2: &Quaternion) -> Result<()> {
    if (*q1 - *q2).norm() <= 1e-14 * (1.0 + q1.norm().max(q2.norm())) {
        Err(Error::CoincidentPoints)
    } else {
        Ok(())
    }
}

/// `r = |q1 - q2| / |1 - conj(q1) q2|`, the pseudo-hyperbolic distance.
///
/// The arguments are put in a fixed order first so that rounding cannot
/// break the symmetry `r(q1, q2) = r(q2, q1)`.
fn pseudo_distance(q1: &Quaternion, q2: &Quaternion) -> f64 {
    let (p, q) = if q1.to_array().partial_cmp(&q2.to_array()) == Some(std::cmp::Ordering::Greater) {
        (q2, q1)
    } else {
        (q1, q2)
    };
    (*p - *q).norm() / (1.0 - p.conj() * *q).norm()
}

/// `L(q) = λ1 (q - q1)(1 - conj(q1) q)^-1 λ2`, sending `q1 -> 0` and
/// `q2 -> t ∈ (0, 1)`. Returns the map and `t`.
pub fn normalizing_map(q1: Quaternion, q2: Quaternion) -> Result<(Flt, f64)> {
    check_disc(&q1)?;
    check_disc(&q2)?;
    distinct(&q1, &q2)?;
    let diff = q2 - q1;
    let lambda1 = diff.inv().scale(diff.norm());
    let den = 1.0 - q1.conj() * q2;
    let lambda2 = den.scale(1.0 / den.norm());
    let l2inv = lambda2.inv();
    let m = Mat2H::new(lambda1, -(lambda1 * q1), -(l2inv * q1.conj()), l2inv);
    Ok((Flt::new(m)?, diff.norm() / den.norm()))
}

/// Whether `0`, `q1` and `q2` are collinear (`conj(q1) q2` real).
fn through_origin(q1: &Quaternion, q2: &Quaternion, tol: f64) -> bool {
    (q1.conj() * *q2).im().norm() <= tol * (1.0 + q1.norm() * q2.norm())
}

/// The non-Euclidean line through two distinct ball points.
pub fn geodesic_disc(q1: Quaternion, q2: Quaternion) -> Result<GeodesicDisc> {
    let (l, _) = normalizing_map(q1, q2)?;
    let back = l.inverse();
    let end = |x: f64| {
        back.apply_finite(Quaternion::real(x))
            .ok_or_else(|| Error::InternalNumeric("geodesic end at a pole".into()))
    };
    let (q3, q4) = (end(1.0)?, end(-1.0)?);

    // the line also passes through the reflections conj(q)^-1 of both points
    if q1.norm() > 1e-8 && q2.norm() > 1e-8 {
        let cr = cross_ratio(q1.into(), q2.into(), q1.conj().inv().into(), q2.conj().inv().into())?
            .finite()
            .unwrap_or(Quaternion::ZERO);
        if cr.im().norm() > 1e-6 * (1.0 + cr.norm()) {
            return Err(Error::InternalNumeric("reflected points are not concyclic".into()));
        }
    }

    let kind = if through_origin(&q1, &q2, Tolerance::default().atol) {
        DiscKind::Diameter
    } else {
        DiscKind::Circle
    };
    Ok(GeodesicDisc { q1, q2, q3, q4, kind })
}

/// `δ(q1, q2) = artanh(|q1 - q2| / |1 - conj(q1) q2|)`.
pub fn distance_disc(q1: Quaternion, q2: Quaternion) -> Result<f64> {
    check_disc(&q1)?;
    check_disc(&q2)?;
    Ok(pseudo_distance(&q1, &q2).atanh())
}

/// `½ log CR(q1, q2, q3, q4)` with the geodesic ends; agrees with
/// [`distance_disc`].
pub fn distance_disc_cross_ratio(q1: Quaternion, q2: Quaternion) -> Result<f64> {
    check_disc(&q1)?;
    check_disc(&q2)?;
    if distinct(&q1, &q2).is_err() {
        return Ok(0.0);
    }
    let g = geodesic_disc(q1, q2)?;
    let cr = cross_ratio(q1.into(), q2.into(), g.q3.into(), g.q4.into())?
        .finite()
        .ok_or(Error::DegenerateResult)?;
    Ok(0.5 * cr.re().ln())
}

/// Poincaré metric `|τ| / (1 - |q|^2)`.
pub fn metric_disc(q: Quaternion, tau: Quaternion) -> Result<f64> {
    check_disc(&q)?;
    Ok(tau.norm() / (1.0 - q.norm_sq()))
}

/// Length of a sampled path in the Poincaré metric, by the composite
/// midpoint rule.
pub fn integrated_length_disc(path: &[Quaternion]) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::TooFewSamples);
    }
    for q in path {
        check_disc(q)?;
    }
    path.windows(2).try_fold(0.0, |acc, w| {
        let mid = (w[0] + w[1]).scale(0.5);
        Ok(acc + metric_disc(mid, w[1] - w[0])?)
    })
}

/// `n` points on the geodesic from `q1` to `q2`, equally spaced in
/// hyperbolic arclength.
pub fn geodesic_sample(q1: Quaternion, q2: Quaternion, n: usize) -> Result<Vec<Quaternion>> {
    if n < 2 {
        return Err(Error::TooFewSamples);
    }
    let (l, t) = normalizing_map(q1, q2)?;
    let back = l.inverse();
    let total = t.atanh();
    let mut out = Vec::with_capacity(n);
    out.push(q1);
    for k in 1..n - 1 {
        let s = k as f64 / (n - 1) as f64;
        let p = Quaternion::real((s * total).tanh());
        out.push(back.apply_finite(p).expect("ball points are not poles"));
    }
    out.push(q2);
    Ok(out)
}

/// Cayley map `ψ(q) = (1 + q)(1 - q)^-1` from the ball onto `H+`.
pub fn cayley(q: ExtQuaternion) -> ExtQuaternion {
    apply_matrix(&Mat2H::CAYLEY, q)
}

/// `ψ^-1(p) = (p - 1)(p + 1)^-1`.
pub fn cayley_inv(p: ExtQuaternion) -> ExtQuaternion {
    apply_matrix(&CAYLEY_INV, p)
}

fn to_disc(p: &Quaternion) -> Result<Quaternion> {
    check_halfspace(p)?;
    cayley_inv((*p).into())
        .finite()
        .ok_or_else(|| Error::InternalNumeric("half-space point mapped to infinity".into()))
}

/// Half-space distance `ω(q1, q2) = δ(ψ^-1 q1, ψ^-1 q2)`.
pub fn distance_halfspace(q1: Quaternion, q2: Quaternion) -> Result<f64> {
    let (p1, p2) = (to_disc(&q1)?, to_disc(&q2)?);
    distance_disc(p1, p2)
}

/// `ω` straight from the definition: `½ log CR(q1, q2, e3, e4)` with the
/// half-space geodesic ends.
pub fn distance_halfspace_direct(q1: Quaternion, q2: Quaternion) -> Result<f64> {
    check_halfspace(&q1)?;
    check_halfspace(&q2)?;
    if distinct(&q1, &q2).is_err() {
        return Ok(0.0);
    }
    let g = geodesic_halfspace(q1, q2)?;
    let cr = cross_ratio(q1.into(), q2.into(), g.e3, g.e4)?
        .finite()
        .ok_or(Error::DegenerateResult)?;
    Ok(0.5 * cr.re().ln())
}

/// [`distance_halfspace`] after confirming it against
/// [`distance_halfspace_direct`].
pub fn distance_halfspace_checked(q1: Quaternion, q2: Quaternion, tol: f64) -> Result<f64> {
    let via_ball = distance_halfspace(q1, q2)?;
    let direct = distance_halfspace_direct(q1, q2)?;
    if (via_ball - direct).abs() > tol * (1.0 + via_ball) {
        return Err(Error::InternalNumeric(format!(
            "half-space distance paths disagree: {via_ball} vs {direct}"
        )));
    }
    Ok(via_ball)
}

/// The non-Euclidean line of `H+` through two points.
///
/// The line is the half-circle centred on the boundary `Re q = 0` in the
/// 2-plane spanned by `1` and `Im(q2) - Im(q1)`, or the vertical half-line
/// when the imaginary parts agree.
pub fn geodesic_halfspace(q1: Quaternion, q2: Quaternion) -> Result<GeodesicHalfspace> {
    check_halfspace(&q1)?;
    check_halfspace(&q2)?;
    distinct(&q1, &q2)?;
    let (x1, x2) = (q1.re(), q2.re());
    let shift = q2.im() - q1.im();
    let d = shift.norm();
    if d <= Tolerance::default().atol * (1.0 + q1.norm() + q2.norm()) {
        let foot = ExtQuaternion::Finite(q1.im());
        let (e3, e4) = if x2 > x1 {
            (ExtQuaternion::Infinity, foot)
        } else {
            (foot, ExtQuaternion::Infinity)
        };
        return Ok(GeodesicHalfspace { q1, q2, e3, e4, kind: HalfspaceKind::HalfLine });
    }
    let u = shift.scale(1.0 / d);
    // centre at Im(q1) + s u, equidistant from q1 and q2
    let s = (x2 * x2 + d * d - x1 * x1) / (2.0 * d);
    let radius = (x1 * x1 + s * s).sqrt();
    let e3 = q1.im() + u.scale(s + radius);
    let e4 = q1.im() + u.scale(s - radius);
    Ok(GeodesicHalfspace { q1, q2, e3: e3.into(), e4: e4.into(), kind: HalfspaceKind::Arc })
}

/// Half-space metric `|τ| / (2 Re q)`.
pub fn metric_halfspace(q: Quaternion, tau: Quaternion) -> Result<f64> {
    check_halfspace(&q)?;
    Ok(tau.norm() / (2.0 * q.re()))
}
