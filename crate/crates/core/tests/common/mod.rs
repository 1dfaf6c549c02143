//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub struct VectorGeometry {
    pub d_u_km: f64,
    pub elevation_deg: f64,
    pub theta_deg: f64,
    pub beam_center_elevation_deg: f64,
}

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}
fn angle_deg(a: V3, b: V3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b)).to_degrees()
}
fn elevation_deg(ground: V3, target: V3) -> f64 {
    let los = sub(target, ground);
    (dot(los, ground) / (norm(los) * norm(ground)))
        .asin()
        .to_degrees()
}

/// Earth-centred Cartesian construction. The beam center sits on the +z
/// axis, the sub-satellite point lies toward +x, and the UE is placed at
/// great-circle distance `cell_radius + separation` from the beam center,
/// azimuth `alpha` measured from the sub-satellite direction.
pub fn vector_geometry(
    radius_km: f64,
    altitude_km: f64,
    slant_km: f64,
    separation_km: f64,
    alpha_deg: f64,
    cell_radius_km: f64,
) -> VectorGeometry {
    let r = radius_km;
    let rs = r + altitude_km;
    let cos_gb = (r * r + rs * rs - slant_km * slant_km) / (2.0 * r * rs);
    let gb = cos_gb.clamp(-1.0, 1.0).acos();
    let sat = [rs * gb.sin(), 0.0, rs * gb.cos()];
    let beam = [0.0, 0.0, r];
    let gbu = (cell_radius_km + separation_km) / r;
    let a = alpha_deg.to_radians();
    let ue = [
        r * gbu.sin() * a.cos(),
        r * gbu.sin() * a.sin(),
        r * gbu.cos(),
    ];
    VectorGeometry {
        d_u_km: norm(sub(ue, sat)),
        elevation_deg: elevation_deg(ue, sat),
        theta_deg: angle_deg(sub(beam, sat), sub(ue, sat)),
        beam_center_elevation_deg: elevation_deg(beam, sat),
    }
}

/// J1(20 i / 999) from its power series in exact fixed-point arithmetic.
pub fn j1_series_exact(i: u32) -> f64 {
    const BITS: u64 = 400;
    let one = BigInt::from(1) << BITS;
    // x / 2 = 10 i / 999, so (x / 2)^2 = 100 i^2 / 999^2.
    let num = BigInt::from(100u64 * u64::from(i) * u64::from(i));
    let den = BigInt::from(999u64 * 999);
    let mut term = one * BigInt::from(10 * i) / BigInt::from(999);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        sum += &term;
        term = -(term * &num) / (&den * BigInt::from((k + 1) * (k + 2)));
        k += 1;
    }
    let sign = if sum.is_negative() { -1.0 } else { 1.0 };
    let mag = sum.abs() >> (BITS - 100);
    sign * mag.to_f64().expect("finite") / 2f64.powi(100)
}
