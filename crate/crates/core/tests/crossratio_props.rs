mod common;

use common::{invertible_matrix, nonzero_quat, quat, unit_quat};
use proptest::prelude::*;
use qmobius::crossratio::{cross_ratio_finite, is_concyclic, on_quadric, separates, transform_quadric, QuadricF3};
use qmobius::{Flt, Generator, Mat2H, Quaternion};

fn quadruple() -> impl Strategy<Value = [Quaternion; 4]> {
    prop::array::uniform4(quat(2.0)).prop_filter("separated", |q| {
        (0..4).all(|i| (i + 1..4).all(|j| (q[i] - q[j]).norm() > 0.05))
    })
}

fn cr(q: &[Quaternion; 4]) -> Quaternion {
    cross_ratio_finite(q[0], q[1], q[2], q[3]).unwrap()
}

/// Four points on a circle in cyclic order.
fn circle_points() -> impl Strategy<Value = [Quaternion; 4]> {
    (quat(2.0), 0.3..2.0f64, unit_quat(), unit_quat(), prop::array::uniform4(0.0..std::f64::consts::TAU))
        .prop_filter_map("circle", |(center, r, u, v, mut t)| {
            let w = v - u * u.dot(&v);
            let w = w.normalized().filter(|_| w.norm() > 1e-2)?;
            t.sort_by(f64::total_cmp);
            let gaps_ok = t.windows(2).all(|p| p[1] - p[0] > 0.05) && t[0] + std::f64::consts::TAU - t[3] > 0.05;
            gaps_ok.then(|| t.map(|s| center + (u * s.cos() + w * s.sin()) * r))
        })
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        quat(2.0).prop_map(|b| Generator::Translation { b }),
        unit_quat().prop_map(|a| Generator::Rotation { a }),
        (0.2..5.0f64).prop_map(|r| Generator::Dilation { r }),
        Just(Generator::Inversion),
    ]
}

fn quadric() -> impl Strategy<Value = QuadricF3> {
    prop_oneof![
        4 => (quat(2.0), 0.2..2.0f64).prop_map(|(c, r)| QuadricF3::sphere(c, r)),
        1 => (unit_quat(), -1.0..1.0f64).prop_map(|(n, d)| QuadricF3::plane(n, d)),
    ]
}

fn on_set(q: &QuadricF3, dir: Quaternion, t: Quaternion) -> Quaternion {
    match q.center_radius_sq() {
        Some((c, r2)) => c + dir * r2.sqrt(),
        None => {
            let n = q.beta.conj() * 2.0;
            let foot = n * (-q.gamma / n.norm_sq());
            foot + t - n * (n.dot(&t) / n.norm_sq())
        }
    }
}

proptest! {
    #[test]
    fn translation_and_dilation_invariance(q in quadruple(), b in quat(3.0), r in 0.2..5.0f64) {
        let c = cr(&q);
        let scale = 1.0 + c.norm();
        prop_assert!((cr(&q.map(|p| p + b)) - c).norm() <= 1e-9 * scale);
        prop_assert!((cr(&q.map(|p| p * r)) - c).norm() <= 1e-9 * scale);
    }

    #[test]
    fn rotation_covariance(q in quadruple(), a in unit_quat()) {
        let c = cr(&q);
        let expected = a * c * a.inverse().unwrap();
        prop_assert!((cr(&q.map(|p| a * p)) - expected).norm() <= 1e-9 * (1.0 + c.norm()));
    }

    #[test]
    fn inversion_covariance(q in quadruple()) {
        prop_assume!(q.iter().all(|p| p.norm() > 0.05));
        let c = cr(&q);
        let image = cr(&q.map(|p| p.inverse().unwrap()));
        let expected = q[2].inverse().unwrap() * c * q[2];
        prop_assert!((image - expected).norm() <= 1e-9 * (1.0 + c.norm()));
    }

    #[test]
    fn orbit_lies_on_a_two_sphere(q in quadruple(), m in invertible_matrix(2.0, 1e-2)) {
        let f = Flt::new(m).unwrap();
        let moved: Vec<Quaternion> = q.iter().filter_map(|p| f.apply_finite(*p)).collect();
        prop_assume!(moved.len() == 4 && moved.iter().all(|p| p.norm() < 1e4));
        let c = cr(&q);
        let image = cross_ratio_finite(moved[0], moved[1], moved[2], moved[3]).unwrap();
        let scale = 1.0 + c.norm();
        prop_assert!((image.re() - c.re()).abs() <= 1e-6 * scale);
        prop_assert!((image.im().norm() - c.im().norm()).abs() <= 1e-6 * scale);
    }

    #[test]
    fn circles_are_concyclic_and_cyclically_ordered(p in circle_points()) {
        prop_assert!(is_concyclic(p[0], p[1], p[2], p[3], 1e-9).unwrap());
        prop_assert!(cr(&p).re() > 1.0);
        // the diagonal pairs interleave
        prop_assert!(separates(p[0], p[2], p[1], p[3]).unwrap());
        prop_assert!(!separates(p[0], p[1], p[2], p[3]).unwrap());
    }

    #[test]
    fn generic_points_are_not_concyclic(q in quadruple()) {
        let c = cr(&q);
        prop_assert_eq!(is_concyclic(q[0], q[1], q[2], q[3], 1e-9).unwrap(), c.im().norm() <= 1e-9 * (1.0 + c.norm()));
    }

    #[test]
    fn quadric_pushforward(g in generator(), q in quadric(), dir in unit_quat(), t in quat(2.0)) {
        let p = on_set(&q, dir, t);
        prop_assert!(on_quadric(&p, &q, 1e-12));
        let image = transform_quadric(&g, &q).unwrap();
        let gp = g.apply(p.into());
        if let Some(gp) = gp.finite() {
            prop_assert!(on_quadric(&gp, &image, 1e-7));
        }
    }

    #[test]
    fn circles_map_to_circles(p in circle_points(), m in invertible_matrix(2.0, 1e-2)) {
        let f = Flt::new(m).unwrap();
        let moved: Vec<Quaternion> = p.iter().filter_map(|q| f.apply_finite(*q)).collect();
        prop_assume!(moved.len() == 4 && moved.iter().all(|q| q.norm() < 1e3));
        prop_assume!((0..4).all(|i| (i + 1..4).all(|j| (moved[i] - moved[j]).norm() > 1e-3)));
        prop_assert!(is_concyclic(moved[0], moved[1], moved[2], moved[3], 1e-6).unwrap());
    }

    #[test]
    fn quadrics_follow_generator_matrices(g in generator(), q in quadric(), dir in unit_quat(), t in quat(2.0)) {
        // the same pushforward, through the generator's matrix
        let p = on_set(&q, dir, t);
        let image = transform_quadric(&g, &q).unwrap();
        let via_matrix = qmobius::flt::apply_matrix(&g.matrix(), p.into());
        if let Some(x) = via_matrix.finite() {
            prop_assert!(on_quadric(&x, &image, 1e-7));
        }
    }

    #[test]
    fn nonzero_rotation_scaling(q in quadric(), a in nonzero_quat(3.0), dir in unit_quat(), t in quat(2.0)) {
        let p = on_set(&q, dir, t);
        let image = transform_quadric(&Generator::Rotation { a }, &q).unwrap();
        let m = Mat2H::new(a, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE);
        let x = qmobius::flt::apply_matrix(&m, p.into()).finite().unwrap();
        prop_assert!(on_quadric(&x, &image, 1e-9));
    }
}
