//! 2x2 quaternionic matrices: Dieudonne determinant, inversion, group
//! membership, and the Cayley conjugation between `SL(H+)` and `Sp(1,1)`.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::tol::Tolerance;

/// Inversion refuses matrices with `det_h <= NEAR_SINGULAR * scale^2`.
pub const NEAR_SINGULAR: f64 = 1e-6;

/// Matrix `[[a, b], [c, d]]` with quaternion entries.
///
/// JSON form is the row-major array `[a, b, c, d]`, each entry `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[Quaternion; 4]", into = "[Quaternion; 4]")]
pub struct Mat2H {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl From<[Quaternion; 4]> for Mat2H {
    fn from(e: [Quaternion; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }
}

impl From<Mat2H> for [Quaternion; 4] {
    fn from(m: Mat2H) -> Self {
        [m.a, m.b, m.c, m.d]
    }
}

/// Matrix groups recognised by [`Mat2H::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupTag {
    GL2H,
    SL2H,
    Sp11,
    SLHplus,
    CenterGL,
    CenterSL,
}

impl GroupTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupTag::GL2H => "GL2H",
            GroupTag::SL2H => "SL2H",
            GroupTag::Sp11 => "Sp11",
            GroupTag::SLHplus => "SLHplus",
            GroupTag::CenterGL => "CenterGL",
            GroupTag::CenterSL => "CenterSL",
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Mat2H {
    pub const IDENTITY: Self = Self::from_reals(1.0, 0.0, 0.0, 1.0);
    /// `diag(1, -1)`, the form preserved by `Sp(1,1)`.
    pub const H: Self = Self::from_reals(1.0, 0.0, 0.0, -1.0);
    /// `antidiag(1, 1)`, the form preserved by `SL(H+)`.
    pub const K: Self = Self::from_reals(0.0, 1.0, 1.0, 0.0);
    /// Matrix of the Cayley map `(1 + q)(1 - q)^-1`.
    pub const CAYLEY: Self = Self::from_reals(1.0, 1.0, -1.0, 1.0);

    pub const fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        Self { a, b, c, d }
    }

    pub const fn from_reals(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(Quaternion::real(a), Quaternion::real(b), Quaternion::real(c), Quaternion::real(d))
    }

    pub fn entries(&self) -> [Quaternion; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(Quaternion::is_finite)
    }

    /// Largest entry modulus.
    pub fn scale(&self) -> f64 {
        self.entries().iter().map(Quaternion::norm).fold(0.0, f64::max)
    }

    /// Multiplies every entry by a real number.
    pub fn scaled(&self, t: f64) -> Mat2H {
        Self::new(self.a * t, self.b * t, self.c * t, self.d * t)
    }

    /// Conjugate transpose `t(A-bar)`.
    pub fn conj_transpose(&self) -> Mat2H {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// Largest entrywise distance.
    pub fn max_abs_diff(&self, other: &Mat2H) -> f64 {
        (*self - *other).scale()
    }

    /// Dieudonne determinant.
    ///
    /// Equal to `sqrt(|a|^2|d|^2 + |c|^2|b|^2 - 2 Re(c a-bar b d-bar))`. It is
    /// evaluated as `|p| |s|` where `p` is the largest entry and `s` its Schur
    /// complement (for `p = a`, `s = d - c a^-1 b`), which avoids the
    /// cancellation inside the radicand; all four such products coincide.
    pub fn det_h(&self) -> f64 {
        let [a, b, c, d] = self.entries();
        let norms = [a.norm(), b.norm(), c.norm(), d.norm()];
        let (pivot, &p) = norms
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.total_cmp(y.1))
            .expect("four entries");
        if p == 0.0 {
            return 0.0;
        }
        let complement = match pivot {
            0 => d - c * a.inv() * b,
            1 => c - d * b.inv() * a,
            2 => b - a * c.inv() * d,
            _ => a - b * d.inv() * c,
        };
        p * complement.norm()
    }

    /// The radicand `|a|^2|d|^2 + |c|^2|b|^2 - 2 Re(c a-bar b d-bar)` as written.
    pub fn det_h_radicand(&self) -> f64 {
        let [a, b, c, d] = self.entries();
        a.norm_sq() * d.norm_sq() + c.norm_sq() * b.norm_sq() - 2.0 * (c * a.conj() * b * d.conj()).re()
    }

    /// Square root of [`Mat2H::det_h_radicand`].
    ///
    /// Slightly negative radicands (rounding) clamp to zero; anything below
    /// `-tol.rtol * (|a|^2|d|^2 + |b|^2|c|^2)` is reported as an error.
    pub fn det_h_explicit(&self, tol: &Tolerance) -> Result<f64> {
        let r = self.det_h_radicand();
        if r >= 0.0 {
            return Ok(r.sqrt());
        }
        let [a, b, c, d] = self.entries();
        let magnitude = a.norm_sq() * d.norm_sq() + c.norm_sq() * b.norm_sq();
        if -r <= tol.atol + tol.rtol * magnitude {
            Ok(0.0)
        } else {
            Err(Error::InternalNumeric(format!("negative det_h radicand {r:e}")))
        }
    }

    /// Whether inversion would be refused.
    pub fn is_near_singular(&self) -> bool {
        let s = self.scale();
        self.det_h() <= NEAR_SINGULAR * s * s
    }

    /// Two-sided inverse.
    ///
    /// Uses the `a`-pivot Schur formula when `|a| >= |b|`, the `b`-pivot one
    /// otherwise.
    pub fn inverse(&self) -> Result<Mat2H> {
        if self.is_near_singular() {
            return Err(Error::Singular { det: self.det_h() });
        }
        let inv = if self.a.norm() >= self.b.norm() {
            self.inverse_pivot_a()
        } else {
            self.inverse_pivot_b()
        };
        inv.ok_or(Error::Singular { det: self.det_h() })
    }

    /// Inverse through `s = d - c a^-1 b`. Defined when `a != 0` and `s != 0`.
    pub fn inverse_pivot_a(&self) -> Option<Mat2H> {
        let Mat2H { a, b, c, d } = *self;
        let ai = a.inverse().ok()?;
        let si = (d - c * ai * b).inverse().ok()?;
        let ai_b = ai * b;
        let c_ai = c * ai;
        Some(Mat2H::new(ai + ai_b * si * c_ai, -(ai_b * si), -(si * c_ai), si))
    }

    /// Inverse through `s = c - d b^-1 a`. Defined when `b != 0` and `s != 0`.
    pub fn inverse_pivot_b(&self) -> Option<Mat2H> {
        let Mat2H { a, b, c, d } = *self;
        let bi = b.inverse().ok()?;
        let si = (c - d * bi * a).inverse().ok()?;
        let d_bi = d * bi;
        let bi_a = bi * a;
        Some(Mat2H::new(-(si * d_bi), si, bi + bi_a * si * d_bi, -(bi_a * si)))
    }

    /// Rescales to `det_h = 1` by dividing every entry by `sqrt(det_h)`.
    pub fn normalize(&self) -> Result<Mat2H> {
        let det = self.det_h();
        if !(det > 0.0) || self.is_near_singular() {
            return Err(Error::Singular { det });
        }
        Ok(self.scaled(1.0 / det.sqrt()))
    }

    /// Residual of `t(A-bar) H A = H`, entrywise max.
    pub fn sp11_residual(&self) -> f64 {
        (self.conj_transpose() * Mat2H::H * *self).max_abs_diff(&Mat2H::H)
    }

    /// Residual of `t(A-bar) K A = K`, entrywise max.
    pub fn slhplus_residual(&self) -> f64 {
        (self.conj_transpose() * Mat2H::K * *self).max_abs_diff(&Mat2H::K)
    }

    /// Form identities are quadratic in the entries, so residuals are
    /// compared against `tol * max(1, scale^2)`.
    fn form_bound(&self, tol: f64) -> f64 {
        let s = self.scale();
        tol * (s * s).max(1.0)
    }

    pub fn is_sp11(&self, tol: f64) -> bool {
        self.sp11_residual() <= self.form_bound(tol)
    }

    pub fn is_slhplus(&self, tol: f64) -> bool {
        self.slhplus_residual() <= self.form_bound(tol)
    }

    /// `A = tI` with `t` real and nonzero.
    pub fn is_center_gl(&self, tol: f64) -> bool {
        let t = self.a.re();
        if t.abs() <= tol {
            return false;
        }
        let target = Mat2H::IDENTITY.scaled(t);
        self.max_abs_diff(&target) <= tol * t.abs().max(1.0)
    }

    /// `A = +I` or `A = -I`.
    pub fn is_center_sl(&self, tol: f64) -> bool {
        self.max_abs_diff(&Mat2H::IDENTITY) <= tol || self.max_abs_diff(&-Mat2H::IDENTITY) <= tol
    }

    /// All group tags whose defining equations hold within `tol`.
    pub fn classify(&self, tol: f64) -> Vec<GroupTag> {
        let det = self.det_h();
        let mut tags = Vec::new();
        if det > tol {
            tags.push(GroupTag::GL2H);
        }
        if (det - 1.0).abs() <= tol {
            tags.push(GroupTag::SL2H);
        }
        if self.is_sp11(tol) {
            tags.push(GroupTag::Sp11);
        }
        if self.is_slhplus(tol) {
            tags.push(GroupTag::SLHplus);
        }
        if self.is_center_gl(tol) {
            tags.push(GroupTag::CenterGL);
        }
        if self.is_center_sl(tol) {
            tags.push(GroupTag::CenterSL);
        }
        tags
    }

    /// `C^-1 A C` with `C` the Cayley matrix; carries `SL(H+)` onto `Sp(1,1)`.
    pub fn cayley_conjugate(&self) -> Mat2H {
        cayley_inverse() * *self * Mat2H::CAYLEY
    }

    /// `C M C^-1`; carries `Sp(1,1)` onto `SL(H+)`.
    pub fn cayley_unconjugate(&self) -> Mat2H {
        Mat2H::CAYLEY * *self * cayley_inverse()
    }
}

/// `C^-1 = (1/2) tC`.
fn cayley_inverse() -> Mat2H {
    Mat2H::from_reals(0.5, -0.5, 0.5, 0.5)
}

impl Mul for Mat2H {
    type Output = Mat2H;
    fn mul(self, o: Mat2H) -> Mat2H {
        Mat2H::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl std::ops::Sub for Mat2H {
    type Output = Mat2H;
    fn sub(self, o: Mat2H) -> Mat2H {
        Mat2H::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl std::ops::Add for Mat2H {
    type Output = Mat2H;
    fn add(self, o: Mat2H) -> Mat2H {
        Mat2H::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Neg for Mat2H {
    type Output = Mat2H;
    fn neg(self) -> Mat2H {
        self.scaled(-1.0)
    }
}

/// Free-function form of the matrix product.
pub fn mat_mul(a: &Mat2H, b: &Mat2H) -> Mat2H {
    *a * *b
}
