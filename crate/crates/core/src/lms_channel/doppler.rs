use crate::constants::{EARTH_GM, SPEED_OF_LIGHT};
use crate::error::{domain, Result};
use crate::geometry::EarthModel;

/// Motion parameters that set the Doppler content of a generated series.
/// They are held constant over one series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerConfig {
    pub satellite_altitude_km: f64,
    pub earth: EarthModel,
    /// Satellite elevation seen from the UE, degrees.
    pub elevation_deg: f64,
    pub carrier_hz: f64,
    pub ue_speed_mps: f64,
    /// UE heading relative to the satellite azimuth, degrees.
    pub ue_azimuth_deg: f64,
}

impl DopplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.satellite_altitude_km.is_nan() || self.satellite_altitude_km < 0.0 {
            return Err(domain(
                "altitude [km]",
                self.satellite_altitude_km,
                "[0, inf)",
            ));
        }
        if !(self.ue_speed_mps.is_finite() && self.ue_speed_mps >= 0.0) {
            return Err(domain("UE speed [m/s]", self.ue_speed_mps, "[0, inf)"));
        }
        if !(self.carrier_hz.is_finite() && self.carrier_hz > 0.0) {
            return Err(domain("carrier [Hz]", self.carrier_hz, "(0, inf)"));
        }
        if !(self.elevation_deg.is_finite() && self.elevation_deg.abs() <= 90.0) {
            return Err(domain("elevation [deg]", self.elevation_deg, "[-90, 90]"));
        }
        Ok(())
    }

    /// Largest absolute frequency occupied by the channel: satellite shift
    /// plus the UE-motion Doppler spread.
    pub fn total_bandwidth_hz(&self) -> f64 {
        doppler_shift_hz(self).abs() + ue_max_doppler_hz(self)
    }
}

/// Circular orbital speed at `altitude_km`, m/s.
pub fn satellite_speed(altitude_km: f64, earth: &EarthModel) -> f64 {
    (EARTH_GM / ((earth.radius_km + altitude_km) * 1e3)).sqrt()
}

/// Doppler shift caused by the satellite motion, Hz.
pub fn doppler_shift_hz(config: &DopplerConfig) -> f64 {
    let r = config.earth.radius_km;
    let v = satellite_speed(config.satellite_altitude_km, &config.earth);
    v / SPEED_OF_LIGHT
        * (r / (r + config.satellite_altitude_km))
        * config.elevation_deg.to_radians().cos()
        * config.carrier_hz
}

/// Maximum Doppler frequency from the UE's own motion, Hz.
pub fn ue_max_doppler_hz(config: &DopplerConfig) -> f64 {
    config.ue_speed_mps * config.carrier_hz / SPEED_OF_LIGHT
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg(elevation_deg: f64) -> DopplerConfig {
        DopplerConfig {
            satellite_altitude_km: 600.0,
            earth: EarthModel::default(),
            elevation_deg,
            carrier_hz: 2.17e9,
            ue_speed_mps: 3.0,
            ue_azimuth_deg: 0.0,
        }
    }

    #[test]
    fn orbital_speed() {
        let earth = EarthModel::default();
        assert_abs_diff_eq!(satellite_speed(600.0, &earth), 7558.0, epsilon = 2.0);
        assert_abs_diff_eq!(satellite_speed(0.0, &earth), 7905.0, epsilon = 2.0);
        let k = |h: f64| satellite_speed(h, &earth) * (earth.radius_km + h).sqrt();
        assert_abs_diff_eq!(k(300.0), k(1200.0), epsilon = 1e-9 * k(300.0));
    }

    #[test]
    fn satellite_doppler() {
        assert_abs_diff_eq!(doppler_shift_hz(&cfg(90.0)), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(doppler_shift_hz(&cfg(20.0)), 47.0e3, epsilon = 200.0);
        assert_abs_diff_eq!(doppler_shift_hz(&cfg(0.0)), 50.0e3, epsilon = 200.0);
    }

    #[test]
    fn ue_doppler_and_bandwidth() {
        let c = cfg(90.0);
        assert_abs_diff_eq!(ue_max_doppler_hz(&c), 21.715, epsilon = 1e-3);
        assert_abs_diff_eq!(
            c.total_bandwidth_hz(),
            ue_max_doppler_hz(&c),
            epsilon = 1e-9
        );
        assert!(DopplerConfig {
            ue_speed_mps: -1.0,
            ..c
        }
        .validate()
        .is_err());
    }
}
