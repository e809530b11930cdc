use serde::{Deserialize, Serialize};

use super::ExtQuaternion;
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;

const TRIVIAL_EPS: f64 = 1e-14;

/// The four elementary maps generating every fractional linear transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Generator {
    /// `q -> q + b`
    Translation { b: Quaternion },
    /// `q -> a q` with `|a| = 1`
    Rotation { a: Quaternion },
    /// `q -> r q` with `r > 0`
    Dilation { r: f64 },
    /// `q -> q^-1`
    Inversion,
}

impl Generator {
    pub fn matrix(&self) -> Mat2H {
        let (one, zero) = (Quaternion::ONE, Quaternion::ZERO);
        match *self {
            Generator::Translation { b } => Mat2H::new(one, b, zero, one),
            Generator::Rotation { a } => Mat2H::new(a, zero, zero, one),
            Generator::Dilation { r } => Mat2H::from_reals(r, 0.0, 0.0, 1.0),
            Generator::Inversion => Mat2H::K,
        }
    }

    pub fn apply(&self, q: ExtQuaternion) -> ExtQuaternion {
        use ExtQuaternion::{Finite, Infinity};
        match (*self, q) {
            (Generator::Inversion, Infinity) => Finite(Quaternion::ZERO),
            (Generator::Inversion, Finite(p)) if p.is_zero() => Infinity,
            (Generator::Inversion, Finite(p)) => Finite(p.inv()),
            (_, Infinity) => Infinity,
            (Generator::Translation { b }, Finite(p)) => Finite(p + b),
            (Generator::Rotation { a }, Finite(p)) => Finite(a * p),
            (Generator::Dilation { r }, Finite(p)) => Finite(p * r),
        }
    }
}

/// Applies a generator list first-to-last.
pub fn apply_all(gens: &[Generator], q: ExtQuaternion) -> ExtQuaternion {
    gens.iter().fold(q, |acc, g| g.apply(acc))
}

/// Emits the generators of `q -> u q + t`, skipping identity factors.
fn push_affine(out: &mut Vec<Generator>, u: Quaternion, t: Quaternion) {
    let modulus = u.norm();
    let unit = u.scale(1.0 / modulus);
    if (unit - Quaternion::ONE).norm() > TRIVIAL_EPS {
        out.push(Generator::Rotation { a: unit });
    }
    if (modulus - 1.0).abs() > TRIVIAL_EPS {
        out.push(Generator::Dilation { r: modulus });
    }
    if t.norm() > TRIVIAL_EPS {
        out.push(Generator::Translation { b: t });
    }
}

pub(super) fn decompose(m: &Mat2H) -> Vec<Generator> {
    let Mat2H { a, b, c, d } = *m;
    let mut out = Vec::with_capacity(7);
    if c.norm() <= TRIVIAL_EPS * m.scale() {
        if d.im().norm() <= TRIVIAL_EPS * d.norm() {
            // (aq + b) d^-1 with d real
            let dr = d.re();
            push_affine(&mut out, a / dr, b / dr);
        } else {
            // (aq + b) d^-1 = [d (aq + b)^-1]^-1
            push_affine(&mut out, a, b);
            out.push(Generator::Inversion);
            push_affine(&mut out, d, Quaternion::ZERO);
            out.push(Generator::Inversion);
        }
    } else {
        // a c^-1 + (b - a c^-1 d)(cq + d)^-1
        let ac = a * c.inv();
        push_affine(&mut out, c, d);
        out.push(Generator::Inversion);
        push_affine(&mut out, b - ac * d, ac);
    }
    out
}
