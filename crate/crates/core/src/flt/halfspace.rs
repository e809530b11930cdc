//! Constructors for Moebius maps of the half-space `Re(q) > 0`.

use super::Flt;
use crate::error::{Error, Result};
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;
use crate::tol::Tolerance;

/// The map `q -> |d|^-2 d q d^-1 + b d^-1`, matrix `[[|d|^-2 d, b], [0, d]]`.
///
/// Requires `Re(b d^-1) = 0`; fixes `∞` and preserves the half-space.
pub fn isotropy_at_infinity(b: Quaternion, d: Quaternion) -> Result<Flt> {
    if d.is_zero() {
        return Err(Error::ZeroD);
    }
    let shift = (b * d.inv()).re();
    let tol = Tolerance::default();
    if !tol.is_small(shift, b.norm() / d.norm()) {
        return Err(Error::NonImaginaryShift(shift));
    }
    let m = Mat2H::new(d.scale(1.0 / d.norm_sq()), b, Quaternion::ZERO, d);
    Flt::new(m)
}

/// The map of matrix `[[|α|^-2 γ α, γ β + α], [|α|^-2 α, β]]`.
///
/// Requires `α != 0`, `Re(γ) = 0` and `Re(β α^-1) = 0`; sends `∞` to `γ`.
pub fn halfspace_general(alpha: Quaternion, beta: Quaternion, gamma: Quaternion) -> Result<Flt> {
    let tol = Tolerance::default();
    if alpha.is_zero() {
        return Err(Error::ConstraintViolation("alpha must be nonzero".into()));
    }
    if !tol.is_small(gamma.re(), gamma.norm()) {
        return Err(Error::ConstraintViolation(format!("Re(gamma) = {} must vanish", gamma.re())));
    }
    let ratio = (beta * alpha.inv()).re();
    if !tol.is_small(ratio, beta.norm() / alpha.norm()) {
        return Err(Error::ConstraintViolation(format!("Re(beta alpha^-1) = {ratio} must vanish")));
    }
    let s = 1.0 / alpha.norm_sq();
    let m = Mat2H::new((gamma * alpha).scale(s), gamma * beta + alpha, alpha.scale(s), beta);
    Flt::new(m)
}
