//! Per-PRB interference power, thermal noise and INR at the terrestrial UE.
//!
//! All powers are kept in dBm. The satellite EIRP is configured in dBW and is
//! converted once, in [`dbw_to_dbm`].

use crate::antenna::{normalized_gain_db, AperturePattern, SatelliteRadioConfig};
use crate::constants::{BOLTZMANN, DBW_TO_DBM};
use crate::error::{domain, Result};
use crate::geometry::{solve_geometry, GeometrySolution, UePlacement};
use crate::propagation::{total_path_loss, PathLossBreakdown};
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverConfig {
    pub antenna_gain_dbi: f64,
    pub equivalent_temperature_k: f64,
    pub prb_bandwidth_hz: f64,
}

impl Default for ReceiverConfig {
    fn default() -> Self {
        Self {
            antenna_gain_dbi: 0.0,
            equivalent_temperature_k: 2303.55,
            prb_bandwidth_hz: 180e3,
        }
    }
}

impl ReceiverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.equivalent_temperature_k.is_finite() && self.equivalent_temperature_k > 0.0) {
            return Err(domain(
                "equivalent temperature [K]",
                self.equivalent_temperature_k,
                "(0, inf)",
            ));
        }
        if !(self.prb_bandwidth_hz.is_finite() && self.prb_bandwidth_hz > 0.0) {
            return Err(domain(
                "PRB bandwidth [Hz]",
                self.prb_bandwidth_hz,
                "(0, inf)",
            ));
        }
        Ok(())
    }
}

/// Every additive term of the received-power chain for one UE position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetBreakdown {
    pub peak_eirp_dbw: f64,
    pub normalized_gain_db: f64,
    pub path_loss: PathLossBreakdown,
    pub channel_gain_db: f64,
    pub rx_antenna_gain_dbi: f64,
    pub rx_power_dbm: f64,
    pub noise_dbm: f64,
    pub inr_db: f64,
}

impl LinkBudgetBreakdown {
    /// EIRP radiated toward the UE, dBW.
    pub fn eirp_toward_dbw(&self) -> f64 {
        self.peak_eirp_dbw + self.normalized_gain_db
    }

    /// Recomposes the received power from the stored terms.
    pub fn recomposed_rx_power_dbm(&self) -> f64 {
        compose_rx_power_dbm(
            self.peak_eirp_dbw,
            self.normalized_gain_db,
            self.path_loss.total,
            self.channel_gain_db,
            self.rx_antenna_gain_dbi,
        )
    }
}

pub fn dbw_to_dbm(dbw: f64) -> f64 {
    dbw + DBW_TO_DBM
}

fn compose_rx_power_dbm(
    peak_eirp_dbw: f64,
    normalized_gain_db: f64,
    path_loss_db: f64,
    channel_gain_db: f64,
    rx_antenna_gain_dbi: f64,
) -> f64 {
    dbw_to_dbm(peak_eirp_dbw + normalized_gain_db) - path_loss_db
        + channel_gain_db
        + rx_antenna_gain_dbi
}

/// Thermal noise `kTB` over one PRB, dBm.
pub fn noise_power_dbm(rx: &ReceiverConfig) -> Result<f64> {
    rx.validate()?;
    let watts = BOLTZMANN * rx.equivalent_temperature_k * rx.prb_bandwidth_hz;
    Ok(dbw_to_dbm(10.0 * watts.log10()))
}

/// Interference power received per PRB, dBm.
pub fn rx_power_dbm(
    geometry: &GeometrySolution,
    path_loss: &PathLossBreakdown,
    channel_gain_db: f64,
    radio: &SatelliteRadioConfig,
    pattern: &AperturePattern,
    rx: &ReceiverConfig,
) -> Result<f64> {
    let gain = normalized_gain_db(geometry.theta_deg, pattern)?;
    Ok(compose_rx_power_dbm(
        radio.peak_eirp_per_prb_dbw,
        gain,
        path_loss.total,
        channel_gain_db,
        rx.antenna_gain_dbi,
    ))
}

pub fn inr_db(rx_power_dbm: f64, noise_dbm: f64) -> f64 {
    rx_power_dbm - noise_dbm
}

/// Full link budget for an already-solved geometry.
pub fn evaluate_link(
    geometry: &GeometrySolution,
    scenario: &ScenarioConfig,
    channel_gain_db: f64,
) -> Result<LinkBudgetBreakdown> {
    let pattern = scenario.pattern()?;
    let path_loss = total_path_loss(geometry, &scenario.propagation())?;
    let normalized_gain_db = normalized_gain_db(geometry.theta_deg, &pattern)?;
    let rx_power_dbm = rx_power_dbm(
        geometry,
        &path_loss,
        channel_gain_db,
        &scenario.radio,
        &pattern,
        &scenario.receiver,
    )?;
    let noise_dbm = noise_power_dbm(&scenario.receiver)?;
    Ok(LinkBudgetBreakdown {
        peak_eirp_dbw: scenario.radio.peak_eirp_per_prb_dbw,
        normalized_gain_db,
        path_loss,
        channel_gain_db,
        rx_antenna_gain_dbi: scenario.receiver.antenna_gain_dbi,
        rx_power_dbm,
        noise_dbm,
        inr_db: inr_db(rx_power_dbm, noise_dbm),
    })
}

/// Solves the geometry for `(slant, separation, alpha)` and evaluates the link.
pub fn link_at(
    scenario: &ScenarioConfig,
    slant_range_km: f64,
    separation_km: f64,
    alpha_deg: f64,
    channel_gain_db: f64,
) -> Result<(GeometrySolution, LinkBudgetBreakdown)> {
    let sat = scenario.satellite(slant_range_km)?;
    let ue = UePlacement::new(separation_km, alpha_deg, scenario.cell_radius_km);
    let geometry = solve_geometry(&sat, &ue, &scenario.earth)?;
    let budget = evaluate_link(&geometry, scenario, channel_gain_db)?;
    Ok((geometry, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn beam_center(g: f64) -> LinkBudgetBreakdown {
        let sc = ScenarioConfig {
            latitude_deg: 10.0,
            ..Default::default()
        };
        link_at(&sc, 882.38, -sc.cell_radius_km, 0.0, g).unwrap().1
    }

    #[test]
    fn noise_reference_points() {
        let n = noise_power_dbm(&ReceiverConfig::default()).unwrap();
        assert_abs_diff_eq!(n, -112.42, epsilon = 0.05);
        assert_abs_diff_eq!(n, -112.39, epsilon = 0.1);
        let cold = ReceiverConfig {
            equivalent_temperature_k: 290.0,
            ..Default::default()
        };
        assert_abs_diff_eq!(noise_power_dbm(&cold).unwrap(), -121.42, epsilon = 0.05);
        let wide = ReceiverConfig {
            prb_bandwidth_hz: 360e3,
            ..Default::default()
        };
        assert_abs_diff_eq!(
            noise_power_dbm(&wide).unwrap() - n,
            10.0 * 2f64.log10(),
            epsilon = 1e-12
        );
        let bad = ReceiverConfig {
            equivalent_temperature_k: 0.0,
            ..Default::default()
        };
        assert!(noise_power_dbm(&bad).is_err());
    }

    #[test]
    fn beam_center_budget() {
        let worst = beam_center(1.2);
        assert_abs_diff_eq!(worst.rx_power_dbm, -109.60, epsilon = 0.05);
        assert_abs_diff_eq!(worst.inr_db, 2.82, epsilon = 0.05);
        let flat = beam_center(0.0);
        assert_abs_diff_eq!(flat.rx_power_dbm, -110.80, epsilon = 0.05);
        assert_abs_diff_eq!(worst.rx_power_dbm - flat.rx_power_dbm, 1.2, epsilon = 1e-9);
    }

    #[test]
    fn null_direction_budget() {
        let sc = ScenarioConfig::default();
        let pattern = sc.pattern().unwrap();
        let theta = (3.831_705_970_207_512 / pattern.ka()).asin().to_degrees();
        let geometry = GeometrySolution {
            gamma_b: 0.0,
            gamma_bu: 0.0,
            gamma_u: 0.0,
            d_u_km: 882.38,
            elevation_deg: 40.0,
            theta_deg: theta,
        };
        let b = evaluate_link(&geometry, &sc, 1.2).unwrap();
        assert!(b.rx_power_dbm <= -169.0, "{}", b.rx_power_dbm);
    }

    #[test]
    fn inr_examples() {
        assert_abs_diff_eq!(inr_db(-109.60, -112.42), 2.82, epsilon = 1e-9);
        assert_eq!(inr_db(-112.42, -112.42), 0.0);
        assert_abs_diff_eq!(inr_db(-142.42, -112.42), -30.0, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn breakdown_recomposes_exactly(sep in 0.0f64..500.0, alpha in 0.0f64..180.0, g in -10.0f64..3.0) {
            let sc = ScenarioConfig::default();
            let (_, b) = link_at(&sc, 882.38, sep, alpha, g).unwrap();
            prop_assert_eq!(b.recomposed_rx_power_dbm(), b.rx_power_dbm);
            prop_assert_eq!(b.inr_db, b.rx_power_dbm - b.noise_dbm);
        }

        #[test]
        fn inr_monotone_in_loss_and_gain(sep in 0.0f64..500.0, dg in 0.01f64..5.0) {
            let sc = ScenarioConfig::default();
            let (geo, b) = link_at(&sc, 882.38, sep, 45.0, 0.0).unwrap();
            let (_, up) = link_at(&sc, 882.38, sep, 45.0, dg).unwrap();
            prop_assert!(up.inr_db > b.inr_db);
            let farther = GeometrySolution { d_u_km: geo.d_u_km * 1.05, ..geo };
            let lossier = evaluate_link(&farther, &sc, 0.0).unwrap();
            prop_assert!(lossier.inr_db < b.inr_db);
        }
    }
}
