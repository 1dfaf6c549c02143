//! Path loss between the satellite and the UE.
//!
//! Total loss is free-space loss plus gaseous absorption plus ionospheric
//! scintillation. Rain, cloud and building-entry losses are not modeled.
//! Shadow fading and clutter loss are left out because the two-state LMS
//! channel already carries them.

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{domain, Error, Result};
use crate::geometry::GeometrySolution;

/// Peak-to-peak fluctuation at 4 GHz on equatorial paths, dB.
const P_FLUC_4GHZ_DB: f64 = 1.1;
/// Scintillation only applies within this absolute latitude, degrees.
const SCINTILLATION_LATITUDE_LIMIT_DEG: f64 = 20.0;

pub const DEFAULT_GASEOUS_ZENITH_DB: f64 = 0.07;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    pub carrier_ghz: f64,
    pub latitude_deg: f64,
    pub gaseous_zenith_attenuation_db: f64,
    pub gaseous_model_enabled: bool,
    /// Adds shadow fading and clutter loss on top of free-space loss. Always
    /// rejected by [`PropagationConfig::validate`]: the two-state channel
    /// already includes both.
    pub shadow_and_clutter_enabled: bool,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self {
            carrier_ghz: 2.17,
            latitude_deg: 0.0,
            gaseous_zenith_attenuation_db: DEFAULT_GASEOUS_ZENITH_DB,
            gaseous_model_enabled: false,
            shadow_and_clutter_enabled: false,
        }
    }
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_ghz.is_finite() && self.carrier_ghz > 0.0) {
            return Err(domain("carrier [GHz]", self.carrier_ghz, "(0, inf)"));
        }
        if !(self.latitude_deg.is_finite() && self.latitude_deg.abs() <= 90.0) {
            return Err(domain("latitude [deg]", self.latitude_deg, "[-90, 90]"));
        }
        if self.gaseous_zenith_attenuation_db.is_nan() || self.gaseous_zenith_attenuation_db < 0.0 {
            return Err(domain(
                "gaseous zenith attenuation [dB]",
                self.gaseous_zenith_attenuation_db,
                "[0, inf)",
            ));
        }
        if self.shadow_and_clutter_enabled {
            return Err(Error::Config(
                "shadow fading and clutter loss would be counted twice with the two-state channel"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// Path loss components, all in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossBreakdown {
    pub fspl: f64,
    pub gaseous: f64,
    pub scintillation: f64,
    pub total: f64,
}

/// Free-space path loss `20 log10(4 pi d f / c)` for `distance_km` and `carrier_hz`.
pub fn fspl_db(distance_km: f64, carrier_hz: f64) -> Result<f64> {
    if !(distance_km.is_finite() && distance_km > 0.0) {
        return Err(domain("distance [km]", distance_km, "(0, inf)"));
    }
    if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
        return Err(domain("carrier [Hz]", carrier_hz, "(0, inf)"));
    }
    let d_m = distance_km * 1e3;
    Ok(20.0 * (4.0 * std::f64::consts::PI * d_m * carrier_hz / SPEED_OF_LIGHT).log10())
}

/// Cosecant-law gaseous absorption over a flat atmosphere.
pub fn gaseous_attenuation_db(elevation_deg: f64, config: &PropagationConfig) -> Result<f64> {
    if !(elevation_deg > 0.0 && elevation_deg <= 90.0) {
        return Err(domain("elevation [deg]", elevation_deg, "(0, 90]"));
    }
    if !config.gaseous_model_enabled {
        return Ok(0.0);
    }
    Ok(config.gaseous_zenith_attenuation_db / elevation_deg.to_radians().sin())
}

/// Ionospheric scintillation loss for `carrier_ghz` at `latitude_deg`.
pub fn scintillation_db(carrier_ghz: f64, latitude_deg: f64) -> f64 {
    if latitude_deg.abs() > SCINTILLATION_LATITUDE_LIMIT_DEG {
        return 0.0;
    }
    P_FLUC_4GHZ_DB / std::f64::consts::SQRT_2 * (carrier_ghz / 4.0).powf(-1.5)
}

pub fn total_path_loss(
    solution: &GeometrySolution,
    config: &PropagationConfig,
) -> Result<PathLossBreakdown> {
    config.validate()?;
    let fspl = fspl_db(solution.d_u_km, config.carrier_ghz * 1e9)?;
    let gaseous = gaseous_attenuation_db(solution.elevation_deg, config)?;
    let scintillation = scintillation_db(config.carrier_ghz, config.latitude_deg);
    Ok(PathLossBreakdown {
        fspl,
        gaseous,
        scintillation,
        total: fspl + gaseous + scintillation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn fspl_oracle(d_km: f64, f_hz: f64) -> f64 {
        let lambda = 2.9979e8 / f_hz;
        20.0 * (4.0 * std::f64::consts::PI * d_km * 1e3 / lambda).log10()
    }

    fn solution(d_u_km: f64, elevation_deg: f64) -> GeometrySolution {
        GeometrySolution {
            gamma_b: 0.0,
            gamma_bu: 0.0,
            gamma_u: 0.0,
            d_u_km,
            elevation_deg,
            theta_deg: 0.0,
        }
    }

    #[test]
    fn fspl_reference_points() {
        assert_abs_diff_eq!(fspl_db(600.0, 2.17e9).unwrap(), 154.74, epsilon = 0.01);
        assert_abs_diff_eq!(fspl_db(882.38, 2.17e9).unwrap(), 158.09, epsilon = 0.01);
        assert_abs_diff_eq!(
            fspl_db(882.38, 2.17e9).unwrap(),
            fspl_oracle(882.38, 2.17e9),
            epsilon = 1e-3
        );
        let doubled = fspl_db(1200.0, 2.17e9).unwrap() - fspl_db(600.0, 2.17e9).unwrap();
        assert_abs_diff_eq!(doubled, 20.0 * 2f64.log10(), epsilon = 1e-12);
    }

    #[test]
    fn fspl_rejects_non_positive_inputs() {
        assert!(fspl_db(0.0, 2e9).is_err());
        assert!(fspl_db(10.0, -1.0).is_err());
    }

    #[test]
    fn gaseous_cosecant_law() {
        let on = PropagationConfig {
            gaseous_model_enabled: true,
            ..Default::default()
        };
        assert_abs_diff_eq!(
            gaseous_attenuation_db(90.0, &on).unwrap(),
            0.07,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            gaseous_attenuation_db(30.0, &on).unwrap(),
            0.14,
            epsilon = 1e-12
        );
        let off = PropagationConfig::default();
        assert_eq!(gaseous_attenuation_db(30.0, &off).unwrap(), 0.0);
        assert!(gaseous_attenuation_db(0.0, &on).is_err());
        assert!(gaseous_attenuation_db(-5.0, &off).is_err());
    }

    #[test]
    fn scintillation_reference_points() {
        assert_abs_diff_eq!(scintillation_db(4.0, 0.0), 0.7778, epsilon = 1e-4);
        assert_abs_diff_eq!(scintillation_db(2.17, 10.0), 1.947, epsilon = 0.005);
        assert_eq!(scintillation_db(2.17, 45.0), 0.0);
        assert_eq!(scintillation_db(2.17, -75.0), 0.0);
        assert_eq!(scintillation_db(2.17, -20.0), scintillation_db(2.17, 20.0));
    }

    #[test]
    fn total_at_mean_slant_range() {
        let cfg = PropagationConfig {
            latitude_deg: 10.0,
            ..Default::default()
        };
        let pl = total_path_loss(&solution(882.38, 40.0), &cfg).unwrap();
        assert_abs_diff_eq!(pl.total, 160.04, epsilon = 0.02);

        let with_gas = PropagationConfig {
            gaseous_model_enabled: true,
            ..cfg
        };
        let pl2 = total_path_loss(&solution(882.38, 40.0), &with_gas).unwrap();
        assert_abs_diff_eq!(pl2.total - pl.total, 0.109, epsilon = 1e-3);

        let mid_lat = PropagationConfig {
            latitude_deg: 45.0,
            ..with_gas
        };
        let pl3 = total_path_loss(&solution(882.38, 40.0), &mid_lat).unwrap();
        assert_eq!(pl3.scintillation, 0.0);
        assert_eq!(pl3.total, pl3.fspl + pl3.gaseous);
    }

    #[test]
    fn double_counting_guard() {
        let cfg = PropagationConfig {
            shadow_and_clutter_enabled: true,
            ..Default::default()
        };
        assert!(matches!(
            total_path_loss(&solution(700.0, 50.0), &cfg),
            Err(Error::Config(_))
        ));
    }

    proptest! {
        #[test]
        fn breakdown_is_additive_and_monotone(d in 500.0f64..3000.0, el in 1.0f64..90.0, lat in -90.0f64..90.0) {
            let cfg = PropagationConfig { latitude_deg: lat, gaseous_model_enabled: true, ..Default::default() };
            let a = total_path_loss(&solution(d, el), &cfg).unwrap();
            prop_assert_eq!(a.total - (a.fspl + a.gaseous + a.scintillation), 0.0);
            prop_assert!(a.fspl >= 0.0 && a.gaseous >= 0.0 && a.scintillation >= 0.0);
            let b = total_path_loss(&solution(d * 1.01, el), &cfg).unwrap();
            prop_assert!(b.total > a.total);
            prop_assert_eq!(a.scintillation, scintillation_db(2.17, lat));
        }
    }
}
