#![allow(dead_code)]

use proptest::prelude::*;
use qmobius::{Mat2H, MobiusCanonical, Quaternion};

pub fn quat(max: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-max..max).prop_map(Quaternion::from)
}

pub fn nonzero_quat(max: f64) -> impl Strategy<Value = Quaternion> {
    quat(max).prop_filter("nonzero", |q| q.norm() > 1e-3)
}

pub fn unit_quat() -> impl Strategy<Value = Quaternion> {
    nonzero_quat(1.0).prop_map(|q| q.normalized().unwrap())
}

pub fn imaginary_unit() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|[x, y, z]| Quaternion::new(0.0, x, y, z).normalized().unwrap())
}

/// Point with `|q| <= radius`.
pub fn ball_point(radius: f64) -> impl Strategy<Value = Quaternion> {
    (quat(1.0), 0.0..radius).prop_map(|(q, r)| q.normalized().map_or(Quaternion::ZERO, |u| u * r))
}

pub fn halfspace_point() -> impl Strategy<Value = Quaternion> {
    (0.05..5.0f64, quat(3.0)).prop_map(|(x, q)| q.im() + x)
}

pub fn matrix(max: f64) -> impl Strategy<Value = Mat2H> {
    prop::array::uniform4(quat(max)).prop_map(|[a, b, c, d]| Mat2H::new(a, b, c, d))
}

pub fn invertible_matrix(max: f64, min_det: f64) -> impl Strategy<Value = Mat2H> {
    matrix(max).prop_filter("well conditioned", move |m| m.det_h() > min_det * m.scale().powi(2).max(1.0))
}

pub fn canonical(q0_max: f64) -> impl Strategy<Value = MobiusCanonical> {
    (unit_quat(), unit_quat(), ball_point(q0_max)).prop_map(|(a, b, q0)| MobiusCanonical::new(a, b, q0).unwrap())
}

pub fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}
