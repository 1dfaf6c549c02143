//! Spherical-Earth geometry of a single LEO beam and an off-cell terrestrial UE.
//!
//! The satellite sits above the sub-satellite point. Its boresight hits the
//! ground at the beam center, a central angle `gamma_b` away. The UE lies on the
//! ground a great-circle distance `separation + cell_radius` from the beam
//! center, in a direction that makes the azimuth `alpha` with the direction from
//! the beam center back to the sub-satellite point. `alpha = 0` therefore puts
//! the UE between the beam center and the satellite's ground track.

use crate::error::{domain, Result};
use crate::scenario::ScenarioConfig;

/// Minimum UE elevation for which the two-state LMS statistics are defined, degrees.
pub const ITU_MIN_ELEVATION_DEG: f64 = 20.0;
/// Carrier range covered by the two-state LMS model, Hz.
pub const ITU_CARRIER_RANGE_HZ: (f64, f64) = (1.5e9, 20e9);
/// Largest channel bandwidth covered by the two-state LMS model, Hz.
pub const ITU_MAX_BANDWIDTH_HZ: f64 = 5e6;

/// Default NTN cell radius, km (45 km cell diameter).
pub const DEFAULT_CELL_RADIUS_KM: f64 = 22.5;

const ALPHA_SCAN_STEP_DEG: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel {
    pub radius_km: f64,
}

impl Default for EarthModel {
    fn default() -> Self {
        Self {
            radius_km: crate::constants::EARTH_RADIUS_KM,
        }
    }
}

impl EarthModel {
    pub fn new(radius_km: f64) -> Result<Self> {
        if !(radius_km.is_finite() && radius_km > 0.0) {
            return Err(domain("earth radius [km]", radius_km, "(0, inf)"));
        }
        Ok(Self { radius_km })
    }
}

/// Satellite altitude and slant range to the beam center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteGeometryConfig {
    pub altitude_km: f64,
    pub slant_range_km: f64,
}

impl SatelliteGeometryConfig {
    pub fn new(altitude_km: f64, slant_range_km: f64, earth: &EarthModel) -> Result<Self> {
        let cfg = Self {
            altitude_km,
            slant_range_km,
        };
        cfg.validate(earth)?;
        Ok(cfg)
    }

    pub fn validate(&self, earth: &EarthModel) -> Result<()> {
        central_angle_from_slant_range(self.slant_range_km, earth, self.altitude_km).map(|_| ())
    }
}

/// Position of the terrestrial UE relative to the NTN cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UePlacement {
    /// Great-circle distance from the cell edge to the UE, km. `-cell_radius_km`
    /// places the UE at the beam center.
    pub separation_km: f64,
    /// Azimuth at the beam center between the UE and the sub-satellite point, degrees.
    pub alpha_deg: f64,
    pub cell_radius_km: f64,
}

impl UePlacement {
    pub fn new(separation_km: f64, alpha_deg: f64, cell_radius_km: f64) -> Self {
        Self {
            separation_km,
            alpha_deg,
            cell_radius_km,
        }
    }

    pub fn at_beam_center(cell_radius_km: f64) -> Self {
        Self::new(-cell_radius_km, 0.0, cell_radius_km)
    }

    fn validate(&self) -> Result<()> {
        if !(self.cell_radius_km.is_finite() && self.cell_radius_km > 0.0) {
            return Err(domain("cell radius [km]", self.cell_radius_km, "(0, inf)"));
        }
        if !(self.separation_km.is_finite() && self.separation_km >= -self.cell_radius_km) {
            return Err(domain(
                "separation distance [km]",
                self.separation_km,
                format!("[{}, inf)", -self.cell_radius_km),
            ));
        }
        // Negative azimuths mirror positive ones; they are accepted for symmetry checks.
        if !(self.alpha_deg.is_finite() && self.alpha_deg.abs() <= 180.0) {
            return Err(domain("alpha [deg]", self.alpha_deg, "[-180, 180]"));
        }
        Ok(())
    }
}

/// Angles and distances derived for one (satellite, UE) configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySolution {
    /// Earth-central angle from the sub-satellite point to the beam center, rad.
    pub gamma_b: f64,
    /// Earth-central angle from the beam center to the UE, rad.
    pub gamma_bu: f64,
    /// Earth-central angle from the sub-satellite point to the UE, rad.
    pub gamma_u: f64,
    /// UE to satellite distance, km.
    pub d_u_km: f64,
    /// Elevation of the satellite seen from the UE, degrees.
    pub elevation_deg: f64,
    /// Angle at the satellite between boresight and the UE direction, degrees.
    pub theta_deg: f64,
}

/// Slant range at which the satellite sits on the geometric horizon, km.
pub fn horizon_slant_range_km(earth: &EarthModel, altitude_km: f64) -> f64 {
    let r = earth.radius_km;
    ((r + altitude_km).powi(2) - r * r).sqrt()
}

/// Earth-central angle between the sub-satellite point and a ground point seen
/// at slant range `slant_km`.
///
/// Inverts `d^2 = R^2 + (R+h)^2 - 2R(R+h) cos(gamma)`.
pub fn central_angle_from_slant_range(
    slant_km: f64,
    earth: &EarthModel,
    altitude_km: f64,
) -> Result<f64> {
    if !(altitude_km.is_finite() && altitude_km > 0.0) {
        return Err(domain("altitude [km]", altitude_km, "(0, inf)"));
    }
    let max = horizon_slant_range_km(earth, altitude_km);
    if !(slant_km.is_finite() && slant_km >= altitude_km && slant_km <= max) {
        return Err(domain(
            "slant range [km]",
            slant_km,
            format!("[{altitude_km}, {max:.2}]"),
        ));
    }
    let r = earth.radius_km;
    let hav = (slant_km * slant_km - altitude_km * altitude_km) / (4.0 * r * (r + altitude_km));
    Ok(2.0 * hav.clamp(0.0, 1.0).sqrt().asin())
}

/// Chord distance from the satellite to a ground point at central angle `gamma`.
pub fn slant_range_from_central_angle(gamma: f64, earth: &EarthModel, altitude_km: f64) -> f64 {
    let r = earth.radius_km;
    let s = (0.5 * gamma).sin();
    (altitude_km * altitude_km + 4.0 * r * (r + altitude_km) * s * s).sqrt()
}

pub fn solve_geometry(
    sat: &SatelliteGeometryConfig,
    ue: &UePlacement,
    earth: &EarthModel,
) -> Result<GeometrySolution> {
    ue.validate()?;
    let gamma_b = central_angle_from_slant_range(sat.slant_range_km, earth, sat.altitude_km)?;
    let r = earth.radius_km;
    let rs = r + sat.altitude_km;

    let gamma_bu = (ue.separation_km + ue.cell_radius_km) / r;
    if gamma_bu >= std::f64::consts::PI {
        return Err(domain(
            "separation distance [km]",
            ue.separation_km,
            "less than half the Earth circumference",
        ));
    }
    let alpha = ue.alpha_deg.to_radians();

    // Haversine form of cos(gu) = cos(gb)cos(gbu) + sin(gb)sin(gbu)cos(alpha).
    let hav_alpha = (0.5 * alpha).sin().powi(2);
    let hav_diff = (0.5 * (gamma_b - gamma_bu)).sin().powi(2);
    let hav_u = hav_diff + gamma_b.sin() * gamma_bu.sin() * hav_alpha;
    let gamma_u = 2.0 * hav_u.clamp(0.0, 1.0).sqrt().asin();

    let d_u_km = slant_range_from_central_angle(gamma_u, earth, sat.altitude_km);
    let sin_el = (rs * gamma_u.cos() - r) / d_u_km;
    let elevation_deg = sin_el.clamp(-1.0, 1.0).asin().to_degrees();

    // Earth-centered frame: satellite on +z, beam center in the x-z plane.
    let sat_pos = [0.0, 0.0, rs];
    let b_hat = [gamma_b.sin(), 0.0, gamma_b.cos()];
    let toward_ssp = [-gamma_b.cos(), 0.0, gamma_b.sin()];
    let lateral = [0.0, 1.0, 0.0];
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let (cu, su) = (gamma_bu.cos(), gamma_bu.sin());
    let mut ue_pos = [0.0; 3];
    for i in 0..3 {
        let dir = ca * toward_ssp[i] + sa * lateral[i];
        ue_pos[i] = r * (cu * b_hat[i] + su * dir);
    }
    let to_center = sub(scale(b_hat, r), sat_pos);
    let to_ue = sub(ue_pos, sat_pos);
    let theta_deg = norm(cross(to_center, to_ue))
        .atan2(dot(to_center, to_ue))
        .to_degrees();

    Ok(GeometrySolution {
        gamma_b,
        gamma_bu,
        gamma_u,
        d_u_km,
        elevation_deg,
        theta_deg,
    })
}

/// A violated applicability condition of the two-state LMS model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ItuCondition {
    ElevationBelowMinimum,
    CarrierOutOfRange,
    BandwidthTooWide,
}

impl std::fmt::Display for ItuCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ElevationBelowMinimum => "elevation < 20 deg",
            Self::CarrierOutOfRange => "carrier outside [1.5, 20] GHz",
            Self::BandwidthTooWide => "bandwidth > 5 MHz",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItuValidityReport {
    pub valid: bool,
    pub violated_conditions: Vec<ItuCondition>,
}

pub fn check_itu_validity(
    solution: &GeometrySolution,
    carrier_hz: f64,
    bandwidth_hz: f64,
) -> ItuValidityReport {
    let mut violated = Vec::new();
    if solution.elevation_deg < ITU_MIN_ELEVATION_DEG {
        violated.push(ItuCondition::ElevationBelowMinimum);
    }
    let (lo, hi) = ITU_CARRIER_RANGE_HZ;
    if !(lo..=hi).contains(&carrier_hz) {
        violated.push(ItuCondition::CarrierOutOfRange);
    }
    if bandwidth_hz > ITU_MAX_BANDWIDTH_HZ {
        violated.push(ItuCondition::BandwidthTooWide);
    }
    ItuValidityReport {
        valid: violated.is_empty(),
        violated_conditions: violated,
    }
}

/// Lowest UE elevation over all azimuths at a given separation, with the
/// azimuth where it occurs.
pub fn min_elevation_over_alpha(
    slant_km: f64,
    separation_km: f64,
    scenario: &ScenarioConfig,
) -> Result<(f64, f64)> {
    let sat = scenario.satellite(slant_km)?;
    let eval = |alpha: f64| -> Result<f64> {
        let ue = UePlacement::new(separation_km, alpha, scenario.cell_radius_km);
        Ok(solve_geometry(&sat, &ue, &scenario.earth)?.elevation_deg)
    };

    let steps = (180.0 / ALPHA_SCAN_STEP_DEG).round() as usize;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=steps {
        let alpha = i as f64 * ALPHA_SCAN_STEP_DEG;
        let el = eval(alpha)?;
        if el < best.0 {
            best = (el, alpha);
        }
    }

    // Golden-section refinement around the coarse minimum.
    let (mut a, mut b) = (
        (best.1 - ALPHA_SCAN_STEP_DEG).max(0.0),
        (best.1 + ALPHA_SCAN_STEP_DEG).min(180.0),
    );
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (eval(c)?, eval(d)?);
    for _ in 0..40 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
        }
    }
    for (el, alpha) in [(fc, c), (fd, d)] {
        if el < best.0 {
            best = (el, alpha);
        }
    }
    Ok(best)
}

/// Largest separation distance at which the UE sees the satellite at or above
/// `min_elevation_deg` in every azimuth. Returns `0.0` when even a UE on the
/// cell edge violates the bound.
pub fn max_separation_for_min_elevation(
    slant_km: f64,
    min_elevation_deg: f64,
    scenario: &ScenarioConfig,
) -> Result<f64> {
    if !(min_elevation_deg > 0.0 && min_elevation_deg < 90.0) {
        return Err(domain(
            "minimum elevation [deg]",
            min_elevation_deg,
            "(0, 90)",
        ));
    }
    let complies = |sep: f64| -> Result<bool> {
        Ok(min_elevation_over_alpha(slant_km, sep, scenario)?.0 >= min_elevation_deg)
    };
    if !complies(0.0)? {
        return Ok(0.0);
    }

    const COARSE_STEP_KM: f64 = 10.0;
    const TOLERANCE_KM: f64 = 0.01;
    let limit = std::f64::consts::PI * scenario.earth.radius_km - scenario.cell_radius_km - 1e-6;
    let mut good = 0.0;
    let mut bad = None;
    while good < limit {
        let next = (good + COARSE_STEP_KM).min(limit);
        if complies(next)? {
            good = next;
        } else {
            bad = Some(next);
            break;
        }
    }
    let Some(mut bad) = bad else {
        return Ok(good);
    };
    while bad - good > TOLERANCE_KM {
        let mid = 0.5 * (good + bad);
        if complies(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}
