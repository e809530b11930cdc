mod common;

use common::{ball_point, canonical, close, halfspace_point, imaginary_unit, quat, unit_quat};
use proptest::prelude::*;
use qmobius::crossratio::{cross_ratio_finite, is_concyclic};
use qmobius::flt::{apply_linear, halfspace_general};
use qmobius::hypgeo::{
    cayley, cayley_inv, distance_disc, distance_halfspace, distance_halfspace_direct, geodesic_disc, geodesic_sample,
    integrated_length_disc, metric_disc, metric_halfspace,
};
use qmobius::{Flt, Quaternion};

fn distinct_pair(radius: f64) -> impl Strategy<Value = (Quaternion, Quaternion)> {
    (ball_point(radius), ball_point(radius)).prop_filter("distinct", |(a, b)| (*a - *b).norm() > 1e-3)
}

fn cayley_flt() -> Flt {
    Flt::new(qmobius::Mat2H::CAYLEY).unwrap()
}

proptest! {
    #[test]
    fn distance_is_moebius_invariant(g in canonical(0.9), a in ball_point(0.9), b in ball_point(0.9)) {
        let f = g.to_flt();
        let d = distance_disc(a, b).unwrap();
        let moved = distance_disc(f.apply_finite(a).unwrap(), f.apply_finite(b).unwrap()).unwrap();
        prop_assert!((moved - d).abs() <= 1e-9 * (1.0 + d));
        prop_assert!((distance_disc(a.conj(), b.conj()).unwrap() - d).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn metric_is_moebius_invariant(g in canonical(0.9), q in ball_point(0.9), tau in unit_quat()) {
        let f = g.to_flt();
        let pushed = apply_linear(&f.jacobian(&q).unwrap(), &tau);
        let before = metric_disc(q, tau).unwrap();
        let after = metric_disc(f.apply_finite(q).unwrap(), pushed).unwrap();
        prop_assert!((after - before).abs() <= 1e-5 * before);
    }

    #[test]
    fn slice_distance_is_planar(i in imaginary_unit(), z1 in (-0.7..0.7f64, -0.7..0.7f64), z2 in (-0.7..0.7f64, -0.7..0.7f64)) {
        let q1 = i * z1.1 + z1.0;
        let q2 = i * z2.1 + z2.0;
        // complex arithmetic in the plane R + R I
        let (dx, dy) = (z1.0 - z2.0, z1.1 - z2.1);
        let (re, im) = (1.0 - (z1.0 * z2.0 + z1.1 * z2.1), -(z1.0 * z2.1 - z1.1 * z2.0));
        let planar = ((dx * dx + dy * dy).sqrt() / (re * re + im * im).sqrt()).atanh();
        prop_assert!((distance_disc(q1, q2).unwrap() - planar).abs() <= 1e-10);
    }

    #[test]
    fn distance_axioms(a in ball_point(0.95), b in ball_point(0.95), c in ball_point(0.95)) {
        let ab = distance_disc(a, b).unwrap();
        prop_assert_eq!(ab, distance_disc(b, a).unwrap());
        prop_assert_eq!(distance_disc(a, a).unwrap(), 0.0);
        prop_assert!((a - b).norm() < 1e-12 || ab > 0.0);
        prop_assert!(ab <= distance_disc(a, c).unwrap() + distance_disc(c, b).unwrap() + 1e-9);
    }

    #[test]
    fn geodesic_ends(pair in distinct_pair(0.9)) {
        let (a, b) = pair;
        let g = geodesic_disc(a, b).unwrap();
        prop_assert!((g.q3.norm() - 1.0).abs() <= 1e-9 && (g.q4.norm() - 1.0).abs() <= 1e-9);
        prop_assert!(is_concyclic(a, b, g.q3, g.q4, 1e-8).unwrap());
        prop_assert!(cross_ratio_finite(a, b, g.q3, g.q4).unwrap().re() > 1.0);
    }

    #[test]
    fn equal_spacing_of_samples(pair in distinct_pair(0.9), n in 2usize..30) {
        let (a, b) = pair;
        let pts = geodesic_sample(a, b, n).unwrap();
        prop_assert_eq!(pts.len(), n);
        prop_assert_eq!((pts[0], pts[n - 1]), (a, b));
        let step = distance_disc(a, b).unwrap() / (n - 1) as f64;
        for w in pts.windows(2) {
            prop_assert!((distance_disc(w[0], w[1]).unwrap() - step).abs() <= 1e-6);
        }
    }

    #[test]
    fn cayley_is_an_isometry(a in ball_point(0.9), b in ball_point(0.9), tau in unit_quat()) {
        let (pa, pb) = (cayley(a.into()).finite().unwrap(), cayley(b.into()).finite().unwrap());
        let d = distance_disc(a, b).unwrap();
        prop_assert!((distance_halfspace(pa, pb).unwrap() - d).abs() <= 1e-9 * (1.0 + d));
        prop_assert!(close(cayley_inv(pa.into()).finite().unwrap(), a, 1e-10));
        let pushed = apply_linear(&cayley_flt().jacobian(&a).unwrap(), &tau);
        let before = metric_disc(a, tau).unwrap();
        prop_assert!((metric_halfspace(pa, pushed).unwrap() - before).abs() <= 1e-5 * before);
    }

    #[test]
    fn halfspace_paths_agree(p in halfspace_point(), q in halfspace_point()) {
        prop_assume!((p - q).norm() > 1e-3);
        let via_ball = distance_halfspace(p, q).unwrap();
        let direct = distance_halfspace_direct(p, q).unwrap();
        prop_assert!((via_ball - direct).abs() <= 1e-9 * (1.0 + via_ball));
    }

    #[test]
    fn halfspace_maps_are_isometries(
        alpha in quat(2.0), u in imaginary_unit(), s in 0.0..2.0f64, v in imaginary_unit(), t in 0.0..2.0f64,
        p in halfspace_point(), q in halfspace_point(),
    ) {
        prop_assume!(alpha.norm() > 0.1);
        let h = halfspace_general(alpha, u * s * alpha, v * t).unwrap();
        let (hp, hq) = (h.apply_finite(p).unwrap(), h.apply_finite(q).unwrap());
        let w = distance_halfspace(p, q).unwrap();
        prop_assert!((distance_halfspace(hp, hq).unwrap() - w).abs() <= 1e-9 * (1.0 + w));
    }

    #[test]
    fn segment_is_longer_than_geodesic(pair in distinct_pair(0.8), bump in quat(0.1)) {
        let (a, b) = pair;
        // a polygonal detour through a perturbed midpoint
        let mid = (a + b).scale(0.5) + bump;
        prop_assume!(mid.norm() < 0.95);
        let mut path: Vec<Quaternion> = (0..=200).map(|k| a + (mid - a).scale(k as f64 / 200.0)).collect();
        path.extend((1..=200).map(|k| mid + (b - mid).scale(k as f64 / 200.0)));
        prop_assert!(integrated_length_disc(&path).unwrap() >= distance_disc(a, b).unwrap() - 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integrated_geodesic_length(pair in distinct_pair(0.9)) {
        let (a, b) = pair;
        let d = distance_disc(a, b).unwrap();
        let len = integrated_length_disc(&geodesic_sample(a, b, 10_000).unwrap()).unwrap();
        prop_assert!((len - d).abs() <= 1e-5 * d);
    }
}

