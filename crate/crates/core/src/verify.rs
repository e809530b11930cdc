//! Seeded invariant suites, run by `qmobius selftest`.
//!
//! Each suite draws its cases from a ChaCha stream derived from the seed,
//! measures one error per case and fails when any error exceeds its bound.

use serde::Serialize;

use crate::crossratio::{cross_ratio_finite, is_concyclic, on_quadric, transform_quadric};
use crate::flt::{apply_matrix, conformal_defect, is_constant, ExtQuaternion, Flt};
use crate::hypgeo::{
    cayley, distance_disc, distance_halfspace, geodesic_sample, integrated_length_disc, metric_disc,
};
use crate::kobayashi::{kobayashi_from_origin, kobayashi_image_modulus_sq, non_isometry_witness, poincare_image_modulus_sq};
use crate::mat2h::Mat2H;
use crate::quat::Quaternion;
use crate::sample::{self, SampleRng};
use num_complex::Complex64;
use rand::Rng;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed error.
    pub worst: f64,
    pub bound: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(name: &'static str, bound: f64) -> Self {
        Self { report: SuiteReport { name, cases: 0, failures: 0, worst: 0.0, bound } }
    }

    fn record(&mut self, err: f64) {
        self.report.cases += 1;
        if err.is_nan() || err > self.report.bound {
            self.report.failures += 1;
        }
        if err.is_nan() {
            self.report.worst = f64::NAN;
        } else if !self.report.worst.is_nan() {
            self.report.worst = self.report.worst.max(err);
        }
    }

    /// Records a boolean outcome as error 0 or infinity.
    fn expect(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { f64::INFINITY });
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

fn rel(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

/// Probe points that stay away from the poles of every matrix in `ms`.
fn probes(rng: &mut SampleRng, ms: &[&Mat2H], n: usize) -> Vec<Quaternion> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let q = sample::quat(rng, 3.0);
        let clear = ms.iter().all(|m| (m.c * q + m.d).norm() > 1e-3 * (1.0 + m.scale() * (1.0 + q.norm())));
        if clear {
            out.push(q);
        }
    }
    out
}

pub fn binet(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("binet", 1e-9);
    for _ in 0..n {
        let (a, b) = (sample::matrix(rng, 10.0), sample::matrix(rng, 10.0));
        let expected = a.det_h() * b.det_h();
        let err = ((a * b).det_h() - expected).abs();
        s.record(if expected > 0.0 { err / expected } else { err });
    }
    s.finish()
}

pub fn inverse(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("inverse", 1e-8);
    for _ in 0..n {
        let m = sample::invertible_matrix(rng, 10.0, 1e-3);
        let Ok(inv) = m.inverse() else {
            s.expect(false);
            continue;
        };
        let mut err = (m * inv).max_abs_diff(&Mat2H::IDENTITY);
        err = err.max((inv * m).max_abs_diff(&Mat2H::IDENTITY));
        if let (Some(p), Some(q)) = (m.inverse_pivot_a(), m.inverse_pivot_b()) {
            err = err.max(p.max_abs_diff(&q) / (1.0 + inv.scale()));
        }
        s.record(err);
    }
    s.finish()
}

pub fn homomorphism(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("homomorphism", 1e-8);
    for _ in 0..n {
        let a = sample::invertible_matrix(rng, 3.0, 0.05);
        let b = sample::invertible_matrix(rng, 3.0, 0.05);
        let ab = a * b;
        for q in probes(rng, &[&b, &ab], 8) {
            let inner = apply_matrix(&b, q.into());
            if let ExtQuaternion::Finite(p) = inner {
                if (a.c * p + a.d).norm() < 1e-3 * (1.0 + a.scale() * (1.0 + p.norm())) {
                    continue;
                }
            }
            let lhs = apply_matrix(&ab, q.into());
            let rhs = apply_matrix(&a, inner);
            match (lhs.finite(), rhs.finite()) {
                (Some(x), Some(y)) => s.record(rel(x, y)),
                (None, None) => s.record(0.0),
                _ => s.expect(false),
            }
        }
        // a rank-one matrix: second row a left multiple of the first
        let (u, v, mu) = (sample::quat(rng, 3.0), sample::quat(rng, 3.0), sample::unit_quat(rng) * 2.0);
        let singular = Mat2H::new(u, v, mu * u, mu * v);
        s.expect(is_constant(&singular).unwrap_or(false));
        s.expect(!is_constant(&a).unwrap_or(true));
    }
    s.finish()
}

pub fn cross_ratio_laws(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("cross_ratio_covariance", 1e-9);
    for _ in 0..n {
        let q: [Quaternion; 4] = std::array::from_fn(|_| sample::quat(rng, 2.0));
        let Ok(cr) = cross_ratio_finite(q[0], q[1], q[2], q[3]) else { continue };
        let image = |f: &dyn Fn(Quaternion) -> Quaternion| cross_ratio_finite(f(q[0]), f(q[1]), f(q[2]), f(q[3]));
        let scale = 1.0 + cr.norm();
        let b = sample::quat(rng, 2.0);
        let r = rng.gen_range(0.2..5.0);
        let a = sample::unit_quat(rng);
        if let Ok(t) = image(&|p| p + b) {
            s.record((t - cr).norm() / scale);
        }
        if let Ok(t) = image(&|p| p * r) {
            s.record((t - cr).norm() / scale);
        }
        if let Ok(t) = image(&|p| a * p) {
            s.record((t - a * cr * a.inv()).norm() / scale);
        }
        if q.iter().all(|p| p.norm() > 1e-3) {
            if let Ok(t) = image(&|p| p.inv()) {
                s.record((t - q[2].inv() * cr * q[2]).norm() / scale);
            }
        }
    }
    s.finish()
}

pub fn concyclicity(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("concyclicity", 0.0);
    for _ in 0..n {
        let c = sample::circle(rng);
        let t = sample::cyclic_angles(rng, 0.1);
        let p = t.map(|x| c.point(x));
        s.expect(is_concyclic(p[0], p[1], p[2], p[3], 1e-9).unwrap_or(false));
        let g: [Quaternion; 4] = std::array::from_fn(|_| sample::quat(rng, 2.0));
        s.expect(!is_concyclic(g[0], g[1], g[2], g[3], 1e-9).unwrap_or(true));
    }
    s.finish()
}

pub fn cyclic_arrangement(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("cyclic_arrangement", 0.0);
    for _ in 0..n {
        let c = sample::circle(rng);
        let t = sample::cyclic_angles(rng, 0.1);
        let p = t.map(|x| c.point(x));
        s.expect(cross_ratio_finite(p[0], p[1], p[2], p[3]).map(|cr| cr.re() > 1.0).unwrap_or(false));
    }
    s.finish()
}

pub fn quadrics(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("quadric_pushforward", 0.0);
    for _ in 0..n {
        let g = sample::generator(rng);
        let q = sample::quadric(rng);
        let p = sample::point_on_quadric(rng, &q);
        let (Ok(image), Some(gp)) = (transform_quadric(&g, &q), g.apply(p.into()).finite()) else {
            s.expect(false);
            continue;
        };
        s.expect(on_quadric(&gp, &image, 1e-7));
    }
    s.finish()
}

pub fn isometry(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("disc_isometry", 1e-9);
    let mut metric = Suite::new("disc_metric_invariance", 1e-5);
    for _ in 0..n {
        let g = sample::canonical(rng, 0.9).to_flt();
        let (a, b) = (sample::ball_point(rng, 0.9), sample::ball_point(rng, 0.9));
        let (ga, gb) = (g.apply_finite(a).unwrap(), g.apply_finite(b).unwrap());
        let d = distance_disc(a, b).unwrap();
        if let Ok(e) = distance_disc(ga, gb) {
            s.record((e - d).abs() / (1.0 + d));
        } else {
            s.expect(false);
        }
        let dc = distance_disc(a.conj(), b.conj()).unwrap();
        s.record((dc - d).abs() / (1.0 + d));

        let tau = sample::unit_quat(rng);
        let jac = g.jacobian(&a).unwrap();
        let pushed = crate::flt::apply_linear(&jac, &tau);
        let before = metric_disc(a, tau).unwrap();
        match metric_disc(ga, pushed) {
            Ok(after) => metric.record((after - before).abs() / before),
            Err(_) => metric.expect(false),
        }
    }
    let mut report = s.finish();
    let m = metric.finish();
    report.cases += m.cases;
    report.failures += m.failures;
    report.worst = report.worst.max(m.worst / m.bound * report.bound);
    report
}

pub fn integrated(rng: &mut SampleRng, pairs: usize, samples: usize) -> SuiteReport {
    let mut s = Suite::new("integrated_length", 1e-5);
    for _ in 0..pairs {
        let (a, b) = (sample::ball_point(rng, 0.9), sample::ball_point(rng, 0.9));
        let d = distance_disc(a, b).unwrap();
        let len = geodesic_sample(a, b, samples).and_then(|p| integrated_length_disc(&p));
        match len {
            Ok(len) => s.record((len - d).abs() / d.max(1e-300)),
            Err(_) => s.expect(false),
        }
    }
    s.finish()
}

pub fn cayley_isometry(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("cayley", 1e-9);
    for _ in 0..n {
        let (a, b) = (sample::ball_point(rng, 0.9), sample::ball_point(rng, 0.9));
        let (pa, pb) = (cayley(a.into()).finite().unwrap(), cayley(b.into()).finite().unwrap());
        let d = distance_disc(a, b).unwrap();
        match distance_halfspace(pa, pb) {
            Ok(w) => s.record((w - d).abs() / (1.0 + d)),
            Err(_) => s.expect(false),
        }
        let sp = sample::sp11(rng, 0.9);
        s.expect(sp.cayley_unconjugate().is_slhplus(1e-9));
        let sl = sample::slhplus(rng, 0.9);
        s.expect(sl.cayley_conjugate().is_sp11(1e-9));
    }
    s.finish()
}

pub fn triangle(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("triangle_inequality", 1e-9);
    for _ in 0..n {
        let [a, b, c]: [Quaternion; 3] = std::array::from_fn(|_| sample::ball_point(rng, 0.95));
        let lhs = distance_disc(a, b).unwrap();
        let rhs = distance_disc(a, c).unwrap() + distance_disc(c, b).unwrap();
        s.record((lhs - rhs).max(0.0));
    }
    s.finish()
}

pub fn conformality(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("conformality", 1e-4);
    for _ in 0..n {
        let f = sample::flt(rng);
        let q = probes(rng, &[f.matrix()], 1)[0];
        match f.jacobian(&q) {
            Ok(j) => s.record(conformal_defect(&j).1),
            Err(_) => s.expect(false),
        }
    }
    s.finish()
}

pub fn kobayashi(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("kobayashi", 1e-10);
    for _ in 0..n {
        let q = sample::ball_point(rng, 0.95);
        let k = kobayashi_from_origin(&q).unwrap();
        s.record((k - distance_disc(Quaternion::ZERO, q).unwrap()).abs());
        let alpha = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU));
        let beta = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU));
        // both return an error if their two evaluation paths disagree
        s.expect(poincare_image_modulus_sq(alpha, beta).is_ok());
        s.expect(kobayashi_image_modulus_sq(alpha, beta).is_ok());
    }
    match non_isometry_witness(20) {
        Ok(r) => {
            s.expect(r.witness.gap > 1e-3);
            s.expect(r.grid_axis_max_gap <= 1e-12 && r.grid_min_off_axis_gap > 0.0);
        }
        Err(_) => s.expect(false),
    }
    s.finish()
}

pub fn sp11_preserves_disc(rng: &mut SampleRng, n: usize) -> SuiteReport {
    let mut s = Suite::new("sp11_disc", 1e-9);
    for _ in 0..n {
        let g = Flt::new(sample::sp11(rng, 0.9)).unwrap();
        let p = sample::ball_point(rng, 0.99);
        s.expect(g.apply_finite(p).map(|x| x.norm() < 1.0).unwrap_or(false));
        let u = sample::unit_quat(rng);
        match g.apply_finite(u) {
            Some(x) => s.record((x.norm() - 1.0).abs()),
            None => s.expect(false),
        }
    }
    s.finish()
}

/// All suites with `iters` cases each (the integrated-length suite uses
/// `iters / 10` pairs of 2000 samples).
pub fn run_all(seed: u64, iters: usize) -> Vec<SuiteReport> {
    type SuiteFn = fn(&mut SampleRng, usize) -> SuiteReport;
    let suites: [SuiteFn; 12] = [
        binet,
        inverse,
        homomorphism,
        cross_ratio_laws,
        concyclicity,
        cyclic_arrangement,
        quadrics,
        isometry,
        cayley_isometry,
        triangle,
        conformality,
        sp11_preserves_disc,
    ];
    let mut out: Vec<SuiteReport> = suites
        .iter()
        .enumerate()
        .map(|(k, f)| f(&mut sample::rng(seed.wrapping_add(k as u64)), iters))
        .collect();
    out.push(kobayashi(&mut sample::rng(seed.wrapping_add(100)), iters));
    out.push(integrated(&mut sample::rng(seed.wrapping_add(101)), (iters / 10).max(1), 2000));
    out
}
