//! Quaternionic Moebius geometry.
//!
//! Fractional linear maps `q -> (aq + b)(cq + d)^-1` of `H ∪ {∞}`, their
//! 2x2 quaternionic matrices and Dieudonne determinant, the quaternionic
//! cross-ratio, and the Poincaré distance on the unit ball and the right
//! half-space.

pub mod crossratio;
pub mod error;
pub mod flt;
pub mod hypgeo;
pub mod kobayashi;
pub mod mat2h;
pub mod quat;
pub mod sample;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use flt::{ExtQuaternion, Flt, Generator, MobiusCanonical};
pub use mat2h::{GroupTag, Mat2H};
pub use quat::{ImaginaryUnit, Quaternion};
pub use tol::Tolerance;
