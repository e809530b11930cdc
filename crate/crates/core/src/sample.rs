//! Seeded random inputs for the property suites and `selftest`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, UnitSphere};

use crate::crossratio::QuadricF3;
use crate::flt::{Flt, Generator, MobiusCanonical};
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction on the unit 3-sphere.
pub fn unit_quat<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        if let Some(u) = Quaternion::from(v).normalized() {
            return u;
        }
    }
}

/// Unit imaginary quaternion.
pub fn unit_imaginary<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
    Quaternion::new(0.0, x, y, z)
}

/// Random direction with modulus uniform in `[0, max_norm]`.
pub fn quat<R: Rng + ?Sized>(rng: &mut R, max_norm: f64) -> Quaternion {
    unit_quat(rng) * rng.gen_range(0.0..=max_norm)
}

/// Point of the ball `|q| <= radius` (uniform in volume).
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Quaternion {
    let r = radius * rng.gen::<f64>().powf(0.25);
    unit_quat(rng) * r
}

/// Point of `H+` with `Re q ∈ [lo, hi]` and imaginary part of modulus at most `spread`.
pub fn halfspace_point<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, spread: f64) -> Quaternion {
    let im = unit_imaginary(rng) * rng.gen_range(0.0..=spread);
    im + rng.gen_range(lo..=hi)
}

/// Matrix with entry moduli at most `max_norm`.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, max_norm: f64) -> Mat2H {
    Mat2H::new(quat(rng, max_norm), quat(rng, max_norm), quat(rng, max_norm), quat(rng, max_norm))
}

/// Matrix with entry moduli at most `max_norm` and `det_h > min_det`.
pub fn invertible_matrix<R: Rng + ?Sized>(rng: &mut R, max_norm: f64, min_det: f64) -> Mat2H {
    loop {
        let m = matrix(rng, max_norm);
        if m.det_h() > min_det {
            return m;
        }
    }
}

/// A fractional linear map with moderately conditioned matrix.
pub fn flt<R: Rng + ?Sized>(rng: &mut R) -> Flt {
    Flt::new(invertible_matrix(rng, 2.0, 0.1)).expect("well conditioned")
}

/// Canonical disc map with `|q0| <= q0_max`.
pub fn canonical<R: Rng + ?Sized>(rng: &mut R, q0_max: f64) -> MobiusCanonical {
    MobiusCanonical::new(unit_quat(rng), unit_quat(rng), ball_point(rng, q0_max)).expect("valid parameters")
}

/// `Sp(1,1)` matrix with `det_h = 1`.
pub fn sp11<R: Rng + ?Sized>(rng: &mut R, q0_max: f64) -> Mat2H {
    *canonical(rng, q0_max).to_flt().matrix()
}

/// `SL(H+)` matrix, the Cayley image of a random `Sp(1,1)` matrix.
pub fn slhplus<R: Rng + ?Sized>(rng: &mut R, q0_max: f64) -> Mat2H {
    sp11(rng, q0_max).cayley_unconjugate()
}

pub fn generator<R: Rng + ?Sized>(rng: &mut R) -> Generator {
    match rng.gen_range(0..4) {
        0 => Generator::Translation { b: quat(rng, 2.0) },
        1 => Generator::Rotation { a: unit_quat(rng) },
        2 => Generator::Dilation { r: rng.gen_range(0.2..5.0) },
        _ => Generator::Inversion,
    }
}

/// Orthonormal pair in `R^4`.
pub fn orthonormal_pair<R: Rng + ?Sized>(rng: &mut R) -> (Quaternion, Quaternion) {
    let u = unit_quat(rng);
    loop {
        let v = unit_quat(rng);
        let w = v - u * u.dot(&v);
        if let Some(w) = w.normalized().filter(|_| w.norm() > 1e-3) {
            return (u, w);
        }
    }
}

/// Random circle `center + ρ (cos θ u + sin θ v)`.
#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub center: Quaternion,
    pub radius: f64,
    pub u: Quaternion,
    pub v: Quaternion,
}

impl Circle {
    pub fn point(&self, theta: f64) -> Quaternion {
        self.center + (self.u * theta.cos() + self.v * theta.sin()) * self.radius
    }
}

pub fn circle<R: Rng + ?Sized>(rng: &mut R) -> Circle {
    let (u, v) = orthonormal_pair(rng);
    Circle { center: quat(rng, 2.0), radius: rng.gen_range(0.3..2.0), u, v }
}

/// Four angles in increasing order, pairwise at least `gap` apart on the circle.
pub fn cyclic_angles<R: Rng + ?Sized>(rng: &mut R, gap: f64) -> [f64; 4] {
    loop {
        let mut t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..std::f64::consts::TAU));
        t.sort_by(f64::total_cmp);
        let wrap = t[0] + std::f64::consts::TAU - t[3];
        if t.windows(2).all(|w| w[1] - w[0] > gap) && wrap > gap {
            return t;
        }
    }
}

/// A sphere or plane that has real points.
pub fn quadric<R: Rng + ?Sized>(rng: &mut R) -> QuadricF3 {
    if rng.gen_bool(0.8) {
        QuadricF3::sphere(quat(rng, 2.0), rng.gen_range(0.2..2.0))
    } else {
        QuadricF3::plane(unit_quat(rng), rng.gen_range(-1.0..1.0))
    }
}

/// A point on the zero set of a sphere or plane built by [`quadric`].
pub fn point_on_quadric<R: Rng + ?Sized>(rng: &mut R, q: &QuadricF3) -> Quaternion {
    match q.center_radius_sq() {
        Some((center, r2)) => center + unit_quat(rng) * r2.sqrt(),
        None => {
            // plane Re(conj(n) q) = offset with n = 2 conj(β)
            let n = q.beta.conj() * 2.0;
            let offset = -q.gamma;
            let foot = n * (offset / n.norm_sq());
            let t = quat(rng, 2.0);
            foot + t - n * (n.dot(&t) / n.norm_sq())
        }
    }
}
