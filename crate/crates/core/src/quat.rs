//! Real quaternions `w + xi + yj + zk` with the Hamilton product.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::Tolerance;

/// A quaternion `w + xi + yj + zk`.
///
/// Serializes as the JSON array `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Real part.
    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part, as a quaternion with zero scalar part.
    pub fn im(&self) -> Quaternion {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn norm_sq(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        // hypot-style scaling is unnecessary for the magnitudes used here
        self.norm_sq().sqrt()
    }

    /// Euclidean inner product on R^4; equals `Re(p * conj(q))`.
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn conj(&self) -> Quaternion {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn scale(&self, s: f64) -> Quaternion {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `conj(q) / |q|^2`.
    pub fn inverse(&self) -> Result<Quaternion> {
        let n2 = self.norm_sq();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Inverse without the zero check. Callers guarantee `self != 0`.
    pub(crate) fn inv(&self) -> Quaternion {
        self.conj().scale(1.0 / self.norm_sq())
    }

    /// `self / |self|`, or `None` for zero.
    pub fn normalized(&self) -> Option<Quaternion> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sq() == 0.0
    }

    /// Componentwise agreement within `tol` (relative to the larger modulus).
    pub fn approx_eq(&self, other: &Quaternion, tol: &Tolerance) -> bool {
        let d = (*self - *other).norm();
        d <= tol.atol + tol.rtol * self.norm().max(other.norm())
    }

    /// Imaginary part negligible relative to the modulus.
    pub fn is_real(&self, tol: &Tolerance) -> bool {
        self.im().norm() <= tol.atol * (1.0 + self.norm())
    }

    /// Unique `q = x + yI` with `y > 0` and `I` an imaginary unit.
    pub fn slice_decompose(&self) -> Result<(f64, f64, ImaginaryUnit)> {
        self.slice_decompose_with(&Tolerance::default())
    }

    pub fn slice_decompose_with(&self, tol: &Tolerance) -> Result<(f64, f64, ImaginaryUnit)> {
        let im = self.im();
        let y = im.norm();
        if y <= tol.atol * (1.0 + self.norm()) {
            return Err(Error::RealInput(self.to_string()));
        }
        let unit = ImaginaryUnit {
            x: im.x / y,
            y: im.y / y,
            z: im.z / y,
        };
        Ok((self.w, y, unit))
    }

    /// Whether `q p q^-1` stays on the 2-sphere `x + yS`, given `p` on it.
    pub fn conjugate_sphere_check(q: &Quaternion, x: f64, y: f64, p: &Quaternion) -> Result<bool> {
        let tol = Tolerance::default();
        let on_sphere = |v: &Quaternion| tol.eq(v.re(), x) && tol.eq(v.im().norm(), y.abs());
        if !on_sphere(p) {
            return Err(Error::NotOnSphere { x, y });
        }
        let qi = q.inverse()?;
        Ok(on_sphere(&(*q * *p * qi)))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Add<f64> for Quaternion {
    type Output = Quaternion;
    fn add(self, r: f64) -> Quaternion {
        Quaternion::new(self.w + r, self.x, self.y, self.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Sub<f64> for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: f64) -> Quaternion {
        Quaternion::new(self.w - r, self.x, self.y, self.z)
    }
}

impl Sub<Quaternion> for f64 {
    type Output = Quaternion;
    fn sub(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self - q.w, -q.x, -q.y, -q.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product: `ij = -ji = k`, `jk = -kj = i`, `ki = -ik = j`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

/// Canonical text form `w+xi+yj+zk` with every sign explicit after the first.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    /// Parses the canonical `w+xi+yj+zk` form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected w+xi+yj+zk, got {s:?}"));
        let s = s.trim();
        let body = s.strip_suffix('k').ok_or_else(bad)?;
        // Split at sign characters that do not follow an exponent marker.
        let bytes = body.as_bytes();
        let mut cuts = Vec::new();
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                cuts.push(idx);
            }
        }
        if cuts.len() != 3 {
            return Err(bad());
        }
        let parts = [
            &body[..cuts[0]],
            &body[cuts[0]..cuts[1]],
            &body[cuts[1]..cuts[2]],
            &body[cuts[2]..],
        ];
        let w: f64 = parts[0].parse().map_err(|_| bad())?;
        let x: f64 = parts[1].strip_suffix('i').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let y: f64 = parts[2].strip_suffix('j').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let z: f64 = parts[3].parse().map_err(|_| bad())?;
        let q = Quaternion::new(w, x, y, z);
        if !q.is_finite() {
            return Err(bad());
        }
        Ok(q)
    }
}

/// A purely imaginary quaternion of modulus one; squares to `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImaginaryUnit {
    x: f64,
    y: f64,
    z: f64,
}

impl ImaginaryUnit {
    pub const I: Self = Self { x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Self = Self { x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Self = Self { x: 0.0, y: 0.0, z: 1.0 };

    /// Accepts `(x, y, z)` with `x^2 + y^2 + z^2 = 1` within the default tolerance.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !Tolerance::default().eq(n2, 1.0) {
            return Err(Error::ConstraintViolation(format!(
                "imaginary unit must have modulus 1, got {}",
                n2.sqrt()
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes the imaginary part of `q`.
    pub fn from_imaginary(q: &Quaternion) -> Option<Self> {
        let im = q.im().normalized()?;
        Some(Self { x: im.x, y: im.y, z: im.z })
    }

    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// `x + yI`.
    pub fn compose(&self, x: f64, y: f64) -> Quaternion {
        Quaternion::new(x, y * self.x, y * self.y, y * self.z)
    }
}

impl From<ImaginaryUnit> for Quaternion {
    fn from(u: ImaginaryUnit) -> Self {
        u.as_quaternion()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Quaternion, b: Quaternion) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * j, -i);
        assert_eq!(k * i, j);
        assert_eq!(i * k, -j);
        assert_eq!(i * i, Quaternion::real(-1.0));
        assert_eq!(i * j * k, Quaternion::real(-1.0));
    }

    #[test]
    fn mul_examples() {
        let q = Quaternion::new(0.3, -1.0, 2.0, 0.5);
        assert_eq!(Quaternion::ONE * q, q);
        let lhs = (Quaternion::ONE + Quaternion::I) * (Quaternion::ONE + Quaternion::J);
        assert_eq!(lhs, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Quaternion::I.conj(), -Quaternion::I);
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).conj(), Quaternion::new(1.0, -1.0, -1.0, -1.0));
        let p = Quaternion::I + Quaternion::J;
        let q = Quaternion::ONE + Quaternion::K;
        assert_eq!((p.conj() * q.conj()).re(), 0.0);
        assert_eq!((q * p).re(), 0.0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Quaternion::I.inverse().unwrap(), -Quaternion::I);
        assert_eq!(Quaternion::real(2.0).inverse().unwrap(), Quaternion::real(0.5));
        let q = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert!(close(q.inverse().unwrap(), Quaternion::new(0.5, -0.5, 0.0, 0.0)));
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn slice_decompose_examples() {
        let (x, y, u) = Quaternion::new(1.0, 2.0, 0.0, 0.0).slice_decompose().unwrap();
        assert_eq!((x, y), (1.0, 2.0));
        assert_eq!(u.as_quaternion(), Quaternion::I);

        let (x, y, u) = Quaternion::new(3.0, 0.0, -4.0, 0.0).slice_decompose().unwrap();
        assert_eq!((x, y), (3.0, 4.0));
        assert_eq!(u.as_quaternion(), -Quaternion::J);

        assert!(matches!(Quaternion::real(5.0).slice_decompose(), Err(Error::RealInput(_))));
    }

    #[test]
    fn conjugate_sphere_examples() {
        let q = Quaternion::ONE + Quaternion::K;
        assert!(Quaternion::conjugate_sphere_check(&q, 0.0, 1.0, &Quaternion::I).unwrap());

        let p = Quaternion::new(2.0, 3.0, 0.0, 0.0);
        assert!(Quaternion::conjugate_sphere_check(&Quaternion::J, 2.0, 3.0, &p).unwrap());
        let image = Quaternion::J * p * Quaternion::J.inverse().unwrap();
        assert!(close(image, Quaternion::new(2.0, -3.0, 0.0, 0.0)));

        let p = Quaternion::new(-1.0, 0.0, 0.6, 0.8);
        assert!(Quaternion::conjugate_sphere_check(&Quaternion::ONE, -1.0, 1.0, &p).unwrap());

        let off = Quaternion::new(0.0, 2.0, 0.0, 0.0);
        assert!(matches!(
            Quaternion::conjugate_sphere_check(&q, 0.0, 1.0, &off),
            Err(Error::NotOnSphere { .. })
        ));
    }

    #[test]
    fn text_format_round_trip() {
        let q = Quaternion::new(1.5, -2.0, 0.0, 3.25e-7);
        let s = q.to_string();
        assert_eq!(s, "1.5-2i+0j+0.000000325k");
        assert_eq!(s.parse::<Quaternion>().unwrap(), q);
        assert_eq!("1e-3+2E+2i-0j+4k".parse::<Quaternion>().unwrap(), Quaternion::new(1e-3, 200.0, 0.0, 4.0));
        assert!("1+2i+3j".parse::<Quaternion>().is_err());
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let u = ImaginaryUnit::new(0.6, 0.0, 0.8).unwrap();
        let q = u.as_quaternion();
        assert!(close(q * q, Quaternion::real(-1.0)));
        assert!(ImaginaryUnit::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn json_is_array() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,2.0,3.0,4.0]");
        let back: Quaternion = serde_json::from_str("[1,2,3,4]").unwrap();
        assert_eq!(back, q);
    }
}
