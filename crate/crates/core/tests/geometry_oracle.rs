mod common;

use common::vector_geometry;
use ntnsim::geometry::DEFAULT_CELL_RADIUS_KM;
use ntnsim::{solve_geometry, EarthModel, SatelliteGeometryConfig, UePlacement};
use proptest::prelude::*;

fn check(slant: f64, sep: f64, alpha: f64) {
    let earth = EarthModel::default();
    let sat = SatelliteGeometryConfig::new(600.0, slant, &earth).unwrap();
    let ue = UePlacement::new(sep, alpha, DEFAULT_CELL_RADIUS_KM);
    let got = solve_geometry(&sat, &ue, &earth).unwrap();
    let want = vector_geometry(
        earth.radius_km,
        600.0,
        slant,
        sep,
        alpha,
        DEFAULT_CELL_RADIUS_KM,
    );
    assert!(
        (got.d_u_km - want.d_u_km).abs() < 1e-6 * want.d_u_km,
        "d_u {} vs {}",
        got.d_u_km,
        want.d_u_km
    );
    assert!(
        (got.elevation_deg - want.elevation_deg).abs() < 1e-6,
        "elev {} vs {}",
        got.elevation_deg,
        want.elevation_deg
    );
    assert!(
        (got.theta_deg - want.theta_deg).abs() < 1e-6,
        "theta {} vs {}",
        got.theta_deg,
        want.theta_deg
    );
}

#[test]
fn anchors_against_vector_construction() {
    for slant in [600.0, 700.0, 882.38, 1075.19] {
        for sep in [-DEFAULT_CELL_RADIUS_KM, 0.0, 100.0, 320.0] {
            for alpha in [0.0, 45.0, 90.0, 135.0, 180.0] {
                check(slant, sep, alpha);
            }
        }
    }
}

#[test]
fn beam_center_elevation_matches() {
    let want = vector_geometry(6378.0, 600.0, 1075.19, -22.5, 0.0, 22.5);
    assert!((want.beam_center_elevation_deg - 30.0).abs() < 0.1);
    let nadir = vector_geometry(6378.0, 600.0, 600.0, -22.5, 0.0, 22.5);
    assert!((nadir.beam_center_elevation_deg - 90.0).abs() < 1e-9);
}

proptest! {
    #[test]
    fn random_placements(slant in 600.0f64..1500.0, sep in -22.5f64..900.0, alpha in 0.0f64..=180.0) {
        check(slant, sep, alpha);
    }
}
