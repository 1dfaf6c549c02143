//! Scenario-wide configuration shared by every model.

use crate::antenna::{AperturePattern, SatelliteRadioConfig, DEFAULT_GAIN_FLOOR_DB};
use crate::error::{domain, Result};
use crate::geometry::{EarthModel, SatelliteGeometryConfig, DEFAULT_CELL_RADIUS_KM};
use crate::link_budget::ReceiverConfig;
use crate::propagation::{PropagationConfig, DEFAULT_GASEOUS_ZENITH_DB};

/// Worst-case small-scale channel gain used by the deterministic sweeps, dB.
pub const WORST_CASE_CHANNEL_GAIN_DB: f64 = 1.2;

/// Satellite, cell, receiver and propagation parameters of one study.
///
/// Defaults reproduce the S-band parameter set: 600 km altitude, 2.17 GHz
/// downlink, 0.44 m aperture, 19.24 dBW peak EIRP per 180 kHz PRB, 45 km cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub earth: EarthModel,
    pub altitude_km: f64,
    pub cell_radius_km: f64,
    pub carrier_hz: f64,
    pub aperture_diameter_m: f64,
    pub gain_floor_db: f64,
    pub radio: SatelliteRadioConfig,
    pub latitude_deg: f64,
    pub gaseous_model_enabled: bool,
    pub gaseous_zenith_attenuation_db: f64,
    pub shadow_and_clutter_enabled: bool,
    pub receiver: ReceiverConfig,
    pub worst_case_channel_gain_db: f64,
    pub ue_speed_mps: f64,
    pub ue_azimuth_deg: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            earth: EarthModel::default(),
            altitude_km: 600.0,
            cell_radius_km: DEFAULT_CELL_RADIUS_KM,
            carrier_hz: 2.17e9,
            aperture_diameter_m: 0.44,
            gain_floor_db: DEFAULT_GAIN_FLOOR_DB,
            radio: SatelliteRadioConfig::default(),
            latitude_deg: 0.0,
            gaseous_model_enabled: false,
            gaseous_zenith_attenuation_db: DEFAULT_GASEOUS_ZENITH_DB,
            shadow_and_clutter_enabled: false,
            receiver: ReceiverConfig::default(),
            worst_case_channel_gain_db: WORST_CASE_CHANNEL_GAIN_DB,
            ue_speed_mps: 3.0,
            ue_azimuth_deg: 0.0,
        }
    }
}

impl ScenarioConfig {
    /// Slant range to the beam center at which it is seen at 30 deg elevation
    /// (upper end of the studied range), km.
    pub const MAX_STUDY_SLANT_KM: f64 = 1075.19;
    /// Mean slant range of the study, km.
    pub const MEAN_SLANT_KM: f64 = 882.38;

    pub fn validate(&self) -> Result<()> {
        EarthModel::new(self.earth.radius_km)?;
        if !(self.altitude_km.is_finite() && self.altitude_km > 0.0) {
            return Err(domain("altitude [km]", self.altitude_km, "(0, inf)"));
        }
        if !(self.cell_radius_km.is_finite() && self.cell_radius_km > 0.0) {
            return Err(domain("cell radius [km]", self.cell_radius_km, "(0, inf)"));
        }
        if !(self.ue_speed_mps.is_finite() && self.ue_speed_mps >= 0.0) {
            return Err(domain("UE speed [m/s]", self.ue_speed_mps, "[0, inf)"));
        }
        self.pattern()?;
        self.propagation().validate()?;
        self.receiver.validate()
    }

    pub fn satellite(&self, slant_range_km: f64) -> Result<SatelliteGeometryConfig> {
        SatelliteGeometryConfig::new(self.altitude_km, slant_range_km, &self.earth)
    }

    pub fn pattern(&self) -> Result<AperturePattern> {
        Ok(
            AperturePattern::new(0.5 * self.aperture_diameter_m, self.carrier_hz)?
                .with_floor_db(self.gain_floor_db),
        )
    }

    pub fn propagation(&self) -> PropagationConfig {
        PropagationConfig {
            carrier_ghz: self.carrier_hz / 1e9,
            latitude_deg: self.latitude_deg,
            gaseous_zenith_attenuation_db: self.gaseous_zenith_attenuation_db,
            gaseous_model_enabled: self.gaseous_model_enabled,
            shadow_and_clutter_enabled: self.shadow_and_clutter_enabled,
        }
    }
}
