//! Canonical form `g(q) = α (q - q0)(1 - conj(q0) q)^-1 β^-1` of Moebius
//! maps of the unit ball.

use serde::{Deserialize, Serialize};

use super::{ExtQuaternion, Flt};
use crate::error::{Error, Result};
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;
use crate::tol::Tolerance;

/// Parameters `(α, β, q0)` with `|α| = |β| = 1` and `|q0| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusCanonical {
    alpha: Quaternion,
    beta: Quaternion,
    q0: Quaternion,
}

impl MobiusCanonical {
    pub const IDENTITY: Self = Self {
        alpha: Quaternion::ONE,
        beta: Quaternion::ONE,
        q0: Quaternion::ZERO,
    };

    pub fn new(alpha: Quaternion, beta: Quaternion, q0: Quaternion) -> Result<Self> {
        let tol = Tolerance::default();
        if !tol.eq(alpha.norm(), 1.0) || !tol.eq(beta.norm(), 1.0) {
            return Err(Error::InvalidCanonical("alpha and beta must be unit quaternions".into()));
        }
        if !(q0.norm() < 1.0) {
            return Err(Error::InvalidCanonical("q0 must lie in the open unit ball".into()));
        }
        Ok(Self { alpha, beta, q0 })
    }

    pub fn alpha(&self) -> Quaternion {
        self.alpha
    }

    pub fn beta(&self) -> Quaternion {
        self.beta
    }

    pub fn q0(&self) -> Quaternion {
        self.q0
    }

    /// `[[α, -α q0], [-β conj(q0), β]]`, with `det_h = 1 - |q0|^2`.
    pub fn matrix(&self) -> Mat2H {
        let Self { alpha, beta, q0 } = *self;
        Mat2H::new(alpha, -(alpha * q0), -(beta * q0.conj()), beta)
    }

    /// The `Sp(1,1)` representative, `matrix() / sqrt(1 - |q0|^2)`.
    pub fn to_flt(&self) -> Flt {
        let s = (1.0 - self.q0.norm_sq()).sqrt();
        Flt::new(self.matrix().scaled(1.0 / s)).expect("canonical matrices are invertible")
    }

    /// Direct evaluation of the canonical formula; `None` at the pole
    /// `q = conj(q0)^-1`.
    pub fn apply(&self, q: &Quaternion) -> Option<Quaternion> {
        let den = 1.0 - self.q0.conj() * *q;
        if den.norm() <= super::POLE_EPS * (1.0 + q.norm()) {
            return None;
        }
        Some(self.alpha * (*q - self.q0) * den.inv() * self.beta.inv())
    }

    /// `det_h` of [`MobiusCanonical::matrix`].
    pub fn det_check(&self) -> f64 {
        self.matrix().det_h()
    }

    /// Parameters of `self ∘ other` from the closed-form composition rule.
    pub fn compose(&self, other: &MobiusCanonical) -> MobiusCanonical {
        let (a, b, q0) = (self.alpha, self.beta, self.q0);
        let (c, d, p0) = (other.alpha, other.beta, other.q0);
        let lead = a * c + a * q0 * d * p0.conj();
        let trail = b * d + b * q0.conj() * c * p0;
        let numerator = p0 + p0 * q0.norm_sq() + c.conj() * q0 * d + p0 * d.conj() * q0.conj() * c * p0;
        MobiusCanonical {
            alpha: lead.scale(1.0 / lead.norm()),
            beta: trail.scale(1.0 / trail.norm()),
            q0: numerator.scale(1.0 / lead.norm_sq()),
        }
    }

    /// `g^-1(q) = α^-1 (q + α q0 conj(β))(1 + β conj(q0) conj(α) q)^-1 β`.
    pub fn inverse(&self) -> MobiusCanonical {
        MobiusCanonical {
            alpha: self.alpha.inv(),
            beta: self.beta.inv(),
            q0: -(self.alpha * self.q0 * self.beta.conj()),
        }
    }

    /// Whether two parameter sets give the same map (`(α, β)` and `(-α, -β)`
    /// coincide as maps).
    pub fn same_map(&self, other: &MobiusCanonical, tol: f64) -> bool {
        let close = |p: Quaternion, q: Quaternion| (p - q).norm() <= tol;
        close(self.q0, other.q0)
            && ((close(self.alpha, other.alpha) && close(self.beta, other.beta))
                || (close(self.alpha, -other.alpha) && close(self.beta, -other.beta)))
    }
}

/// Canonical parameters of an `Sp(1,1)` matrix: `α = a/|a|`, `β = d/|d|`,
/// `q0 = -a^-1 b`.
pub fn to_canonical_disc(m: &Mat2H) -> Result<MobiusCanonical> {
    if !m.is_sp11(Tolerance::default().atol) {
        return Err(Error::NotSp11);
    }
    let alpha = m.a.scale(1.0 / m.a.norm());
    let beta = m.d.scale(1.0 / m.d.norm());
    let q0 = -(m.a.inv() * m.b);
    MobiusCanonical::new(alpha, beta, q0)
}

impl From<MobiusCanonical> for Flt {
    fn from(g: MobiusCanonical) -> Flt {
        g.to_flt()
    }
}

impl MobiusCanonical {
    /// Image of an extended point through the normalized matrix.
    pub fn apply_ext(&self, q: ExtQuaternion) -> ExtQuaternion {
        self.to_flt().apply(q)
    }
}
