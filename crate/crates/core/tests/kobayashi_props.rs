mod common;

use common::ball_point;
use num_complex::Complex64;
use proptest::prelude::*;
use qmobius::hypgeo::distance_disc;
use qmobius::kobayashi::{
    from_c2, gap_closed, kobayashi_from_origin, kobayashi_image_modulus_sq, poincare_image_modulus_sq, to_c2,
};
use qmobius::Quaternion;

fn disc_complex() -> impl Strategy<Value = Complex64> {
    (0.0..0.99f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #[test]
    fn origin_coincidence(q in ball_point(0.99)) {
        let k = kobayashi_from_origin(&q).unwrap();
        prop_assert!((k - distance_disc(Quaternion::ZERO, q).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn c2_round_trip(q in common::quat(10.0)) {
        prop_assert_eq!(from_c2(&to_c2(&q)), q);
        let p = to_c2(&q);
        prop_assert!((p.norm_sq() - q.norm_sq()).abs() <= 1e-12 * (1.0 + q.norm_sq()));
    }

    #[test]
    fn dual_paths_agree(alpha in disc_complex(), beta in disc_complex()) {
        // both operations fail when closed form and direct evaluation disagree by > 1e-10
        let q = poincare_image_modulus_sq(alpha, beta).unwrap();
        let c = kobayashi_image_modulus_sq(alpha, beta).unwrap();
        prop_assert!((q - c - gap_closed(alpha, beta)).abs() <= 1e-12);
    }

    #[test]
    fn gap_vanishes_exactly_on_the_axes(alpha in disc_complex(), beta in disc_complex()) {
        let on_axis = |a: Complex64, b: Complex64| {
            poincare_image_modulus_sq(a, b).unwrap() - kobayashi_image_modulus_sq(a, b).unwrap()
        };
        prop_assert!(on_axis(Complex64::new(0.0, 0.0), beta).abs() <= 1e-12);
        prop_assert!(on_axis(alpha, Complex64::new(0.0, 0.0)).abs() <= 1e-12);
        if alpha.norm() > 1e-3 && beta.norm() > 1e-3 {
            prop_assert!(on_axis(alpha, beta) > 0.0);
        }
    }
}
