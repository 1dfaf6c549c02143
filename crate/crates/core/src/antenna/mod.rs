//! Satellite antenna: circular-aperture pattern and off-axis EIRP.

mod bessel;

pub use bessel::bessel_j1;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{domain, Result};

/// Default gain floor applied at pattern nulls, dB.
pub const DEFAULT_GAIN_FLOOR_DB: f64 = -80.0;

/// Normalized gain pattern of a uniformly illuminated circular aperture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AperturePattern {
    pub aperture_radius_m: f64,
    pub carrier_hz: f64,
    /// Values below this are reported as the floor, dB.
    pub floor_db: f64,
}

impl AperturePattern {
    pub fn new(aperture_radius_m: f64, carrier_hz: f64) -> Result<Self> {
        if !(aperture_radius_m.is_finite() && aperture_radius_m > 0.0) {
            return Err(domain("aperture radius [m]", aperture_radius_m, "(0, inf)"));
        }
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(domain("carrier [Hz]", carrier_hz, "(0, inf)"));
        }
        Ok(Self {
            aperture_radius_m,
            carrier_hz,
            floor_db: DEFAULT_GAIN_FLOOR_DB,
        })
    }

    pub fn with_floor_db(mut self, floor_db: f64) -> Self {
        self.floor_db = floor_db;
        self
    }

    /// Aperture circumference in wavelengths.
    pub fn ka(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.carrier_hz * self.aperture_radius_m / SPEED_OF_LIGHT
    }

    /// Linear normalized gain, without the null floor.
    pub fn gain_linear(&self, theta_deg: f64) -> Result<f64> {
        check_theta(theta_deg)?;
        if theta_deg == 0.0 {
            return Ok(1.0);
        }
        let x = self.ka() * theta_deg.to_radians().sin();
        let ratio = bessel_j1(x) / x;
        Ok(4.0 * ratio * ratio)
    }
}

fn check_theta(theta_deg: f64) -> Result<()> {
    if !(theta_deg.is_finite() && theta_deg.abs() <= 90.0) {
        return Err(domain("misalignment angle [deg]", theta_deg, "[-90, 90]"));
    }
    Ok(())
}

/// Peak EIRP and nominal maximum gain of the satellite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteRadioConfig {
    /// EIRP per PRB along boresight, dBW.
    pub peak_eirp_per_prb_dbw: f64,
    /// Nominal peak antenna gain, dBi. Carried as metadata only.
    pub max_gain_dbi: f64,
}

impl Default for SatelliteRadioConfig {
    fn default() -> Self {
        Self {
            peak_eirp_per_prb_dbw: 19.24,
            max_gain_dbi: 40.4,
        }
    }
}

/// Normalized pattern gain in dB at misalignment `theta_deg`, clamped at the
/// pattern floor.
pub fn normalized_gain_db(theta_deg: f64, pattern: &AperturePattern) -> Result<f64> {
    let g = pattern.gain_linear(theta_deg)?;
    if theta_deg == 0.0 {
        return Ok(0.0);
    }
    if g <= 0.0 {
        return Ok(pattern.floor_db);
    }
    Ok((10.0 * g.log10()).max(pattern.floor_db))
}

/// EIRP radiated toward misalignment `theta_deg`, dBW.
pub fn eirp_toward(
    theta_deg: f64,
    radio: &SatelliteRadioConfig,
    pattern: &AperturePattern,
) -> Result<f64> {
    Ok(radio.peak_eirp_per_prb_dbw + normalized_gain_db(theta_deg, pattern)?)
}
