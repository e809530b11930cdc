//! Fractional linear transformations `q -> (aq + b)(cq + d)^-1` of `H ∪ {∞}`.

mod canonical;
mod generator;
mod halfspace;

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;
use crate::tol::Tolerance;

pub use canonical::{to_canonical_disc, MobiusCanonical};
pub use generator::{apply_all, Generator};
pub use halfspace::{halfspace_general, isotropy_at_infinity};

/// `|cq + d|` at or below this multiple of `1 + |c||q| + |d|` counts as a pole.
pub const POLE_EPS: f64 = 1e-12;

/// A point of `H ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtQuaternion {
    Finite(Quaternion),
    Infinity,
}

impl ExtQuaternion {
    pub fn finite(&self) -> Option<Quaternion> {
        match self {
            ExtQuaternion::Finite(q) => Some(*q),
            ExtQuaternion::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtQuaternion::Infinity)
    }

    /// Both infinite, or both finite and close.
    pub fn approx_eq(&self, other: &ExtQuaternion, tol: &Tolerance) -> bool {
        match (self, other) {
            (ExtQuaternion::Infinity, ExtQuaternion::Infinity) => true,
            (ExtQuaternion::Finite(p), ExtQuaternion::Finite(q)) => p.approx_eq(q, tol),
            _ => false,
        }
    }
}

impl From<Quaternion> for ExtQuaternion {
    fn from(q: Quaternion) -> Self {
        ExtQuaternion::Finite(q)
    }
}

impl fmt::Display for ExtQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQuaternion::Finite(q) => q.fmt(f),
            ExtQuaternion::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtQuaternion::Finite(q) => q.serialize(s),
            ExtQuaternion::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtQuaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExtVisitor;

        impl<'de> Visitor<'de> for ExtVisitor {
            type Value = ExtQuaternion;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array [w,x,y,z] or the string \"inf\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtQuaternion, E> {
                if v == "inf" {
                    Ok(ExtQuaternion::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: de::SeqAccess<'de>>(self, seq: A) -> std::result::Result<ExtQuaternion, A::Error> {
                let q = Quaternion::deserialize(de::value::SeqAccessDeserializer::new(seq))?;
                Ok(ExtQuaternion::Finite(q))
            }
        }

        d.deserialize_any(ExtVisitor)
    }
}

/// A fractional linear transformation, stored as a matrix with `det_h = 1`.
///
/// Two transformations are the same map exactly when their matrices agree up
/// to sign; see [`Flt::same_map`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Mat2H", into = "Mat2H")]
pub struct Flt {
    matrix: Mat2H,
}

impl TryFrom<Mat2H> for Flt {
    type Error = Error;
    fn try_from(m: Mat2H) -> Result<Self> {
        Flt::new(m)
    }
}

impl From<Flt> for Mat2H {
    fn from(f: Flt) -> Self {
        f.matrix
    }
}

impl Flt {
    pub const IDENTITY: Flt = Flt { matrix: Mat2H::IDENTITY };
    /// `q -> q^-1`.
    pub const INVERSION: Flt = Flt { matrix: Mat2H::K };

    /// Normalizes `m` to `det_h = 1`; refuses (near-)singular matrices.
    pub fn new(m: Mat2H) -> Result<Flt> {
        if !m.is_finite() {
            return Err(Error::ConstraintViolation("matrix entries must be finite".into()));
        }
        Ok(Flt { matrix: m.normalize()? })
    }

    /// `q -> q + b`.
    pub fn translation(b: Quaternion) -> Flt {
        Flt { matrix: Mat2H::new(Quaternion::ONE, b, Quaternion::ZERO, Quaternion::ONE) }
    }

    pub fn matrix(&self) -> &Mat2H {
        &self.matrix
    }

    /// Image of a point; poles go to `Infinity`.
    pub fn apply(&self, q: ExtQuaternion) -> ExtQuaternion {
        apply_matrix(&self.matrix, q)
    }

    /// Image of a finite point, `None` at a pole.
    pub fn apply_finite(&self, q: Quaternion) -> Option<Quaternion> {
        self.apply(ExtQuaternion::Finite(q)).finite()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Flt) -> Flt {
        let m = self.matrix * other.matrix;
        // products of unit-determinant matrices keep det_h = 1 up to rounding
        let det = m.det_h();
        Flt { matrix: m.scaled(1.0 / det.sqrt()) }
    }

    pub fn inverse(&self) -> Flt {
        let inv = self
            .matrix
            .inverse()
            .expect("unit-determinant matrices are invertible");
        Flt { matrix: inv }
    }

    /// Matrices equal up to sign.
    pub fn same_map(&self, other: &Flt, tol: f64) -> bool {
        let scale = self.matrix.scale().max(other.matrix.scale()).max(1.0);
        self.matrix.max_abs_diff(&other.matrix) <= tol * scale
            || self.matrix.max_abs_diff(&(-other.matrix)) <= tol * scale
    }

    /// Whether a finite point is a pole (`cq + d ≈ 0`).
    pub fn is_pole(&self, q: &Quaternion) -> bool {
        is_pole(&self.matrix, q)
    }

    /// Real 4x4 differential at `q` by central differences, `h = 1e-6 (1 + |q|)`.
    ///
    /// `J[r][s]` is the derivative of output coordinate `r` along input
    /// coordinate `s`, coordinates ordered `(w, x, y, z)`.
    pub fn jacobian(&self, q: &Quaternion) -> Result<[[f64; 4]; 4]> {
        if self.is_pole(q) {
            return Err(Error::PoleInput);
        }
        let h = 1e-6 * (1.0 + q.norm());
        let mut jac = [[0.0; 4]; 4];
        for (s, unit) in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].iter().enumerate() {
            let step = *unit * h;
            let fwd = self.apply_finite(*q + step).ok_or(Error::PoleInput)?;
            let bwd = self.apply_finite(*q - step).ok_or(Error::PoleInput)?;
            let diff = ((fwd - bwd) / (2.0 * h)).to_array();
            for (r, v) in diff.iter().enumerate() {
                jac[r][s] = *v;
            }
        }
        Ok(jac)
    }

    /// Generators whose successive application reproduces this map.
    ///
    /// The list is applied first-to-last: `[g1, g2, ...]` means `... ∘ g2 ∘ g1`.
    /// For `c != 0` the factorization follows
    /// `L(q) = a c^-1 + (b - a c^-1 d)(cq + d)^-1`; for `c = 0` with non-real
    /// `d` it uses `L(q) = [d (aq + b)^-1]^-1`. Identity factors are omitted.
    pub fn decompose_generators(&self) -> Vec<Generator> {
        generator::decompose(&self.matrix)
    }
}

fn is_pole(m: &Mat2H, q: &Quaternion) -> bool {
    let den = m.c * *q + m.d;
    den.norm() <= POLE_EPS * (1.0 + m.c.norm() * q.norm() + m.d.norm())
}

/// `(aq + b)(cq + d)^-1` on `H ∪ {∞}` for any matrix (normalized or not).
pub fn apply_matrix(m: &Mat2H, q: ExtQuaternion) -> ExtQuaternion {
    match q {
        ExtQuaternion::Finite(q) => {
            if is_pole(m, &q) {
                ExtQuaternion::Infinity
            } else {
                let den = m.c * q + m.d;
                ExtQuaternion::Finite((m.a * q + m.b) * den.inv())
            }
        }
        ExtQuaternion::Infinity => {
            if m.c.norm() <= POLE_EPS * m.scale() {
                ExtQuaternion::Infinity
            } else {
                ExtQuaternion::Finite(m.a * m.c.inv())
            }
        }
    }
}

/// Whether `q -> (aq + b)(cq + d)^-1` is constant, i.e. `det_h(A) ≈ 0`.
pub fn is_constant(m: &Mat2H) -> Result<bool> {
    Ok(constant_value(m)?.is_some())
}

/// The constant value of a degenerate map: `b d^-1` or `a c^-1`, whichever
/// denominator is larger. `None` when the map is not constant.
pub fn constant_value(m: &Mat2H) -> Result<Option<Quaternion>> {
    if m.c.is_zero() && m.d.is_zero() {
        return Err(Error::BothZero);
    }
    let s = m.scale();
    let tol = Tolerance::default();
    if m.det_h() > tol.atol * s * s {
        return Ok(None);
    }
    let value = if m.d.norm() >= m.c.norm() {
        m.b * m.d.inv()
    } else {
        m.a * m.c.inv()
    };
    Ok(Some(value))
}

/// Map sending `alpha -> 0`, `beta -> ∞`, `gamma -> 1`:
/// `(γ - β)(γ - α)^-1 (q - α)(q - β)^-1`, dropping the factors that contain
/// an infinite argument.
pub fn three_point_map(alpha: ExtQuaternion, beta: ExtQuaternion, gamma: ExtQuaternion) -> Result<Flt> {
    let tol = Tolerance::default();
    let pts = [alpha, beta, gamma];
    for i in 0..3 {
        for j in (i + 1)..3 {
            if pts[i].approx_eq(&pts[j], &tol) {
                return Err(Error::CoincidentPoints);
            }
        }
    }
    use ExtQuaternion::{Finite, Infinity};
    let one = Quaternion::ONE;
    let zero = Quaternion::ZERO;
    let m = match (alpha, beta, gamma) {
        (Finite(a), Finite(b), Finite(g)) => {
            let k = (g - b) * (g - a).inv();
            Mat2H::new(k, -(k * a), one, -b)
        }
        (Infinity, Finite(b), Finite(g)) => Mat2H::new(zero, g - b, one, -b),
        (Finite(a), Infinity, Finite(g)) => {
            let k = (g - a).inv();
            Mat2H::new(k, -(k * a), zero, one)
        }
        (Finite(a), Finite(b), Infinity) => Mat2H::new(one, -a, one, -b),
        _ => return Err(Error::CoincidentPoints),
    };
    Flt::new(m)
}

/// `t(J) J` for a 4x4 real matrix.
pub fn gram(j: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut g = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            g[r][c] = (0..4).map(|k| j[k][r] * j[k][c]).sum();
        }
    }
    g
}

/// Conformality defect of a differential: returns `(λ², max |t(J)J - λ² I|)`
/// with `λ²` the mean diagonal of `t(J) J`.
pub fn conformal_defect(j: &[[f64; 4]; 4]) -> (f64, f64) {
    let g = gram(j);
    let lambda_sq = (0..4).map(|k| g[k][k]).sum::<f64>() / 4.0;
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for c in 0..4 {
            let target = if r == c { lambda_sq } else { 0.0 };
            worst = worst.max((g[r][c] - target).abs());
        }
    }
    (lambda_sq, worst)
}

/// Applies a 4x4 real matrix to a quaternion viewed as a vector of R^4.
pub fn apply_linear(j: &[[f64; 4]; 4], v: &Quaternion) -> Quaternion {
    let x = v.to_array();
    let mut out = [0.0; 4];
    for r in 0..4 {
        out[r] = (0..4).map(|c| j[r][c] * x[c]).sum();
    }
    Quaternion::from(out)
}
