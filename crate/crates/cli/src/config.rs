//! Plain-text `key = value` scenario files.
//!
//! Lengths are in km, frequencies in GHz unless the key says otherwise,
//! powers in dBW or dB as the key name states. `#` starts a comment. Keys
//! that are not set keep their defaults; unknown keys are an error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use ntnsim::lms_channel::Environment;
use ntnsim::sweep::{Aggregation, DEFAULT_SWEEP_ALPHAS_DEG};
use ntnsim::{ReceiverConfig, SatelliteRadioConfig, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSetting {
    WorstCase,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub altitude_km: f64,
    pub earth_radius_km: f64,
    pub cell_radius_km: f64,
    pub carrier_ghz: f64,
    pub aperture_diameter_m: f64,
    pub gain_floor_db: f64,
    pub peak_eirp_per_prb_dbw: f64,
    pub max_gain_dbi: f64,
    pub latitude_deg: f64,
    pub gaseous_model: bool,
    pub gaseous_zenith_db: f64,
    pub shadow_and_clutter: bool,
    pub rx_antenna_gain_dbi: f64,
    pub rx_noise_temperature_k: f64,
    pub prb_bandwidth_khz: f64,
    pub worst_case_channel_gain_db: f64,
    pub ue_speed_mps: f64,
    pub ue_azimuth_deg: f64,
    pub min_elevation_deg: f64,

    pub slant_km: f64,
    pub separation_km: f64,
    pub alpha_deg: f64,

    pub sweep_min_km: Option<f64>,
    pub sweep_max_km: Option<f64>,
    pub sweep_step_km: Option<f64>,
    pub sweep_fixed_km: Option<f64>,
    pub alphas_deg: Vec<f64>,
    pub channel_mode: ModeSetting,
    pub figures: Vec<String>,

    pub solver_alpha_step_deg: f64,
    pub solver_coarse_step_km: f64,
    pub solver_tolerance_km: f64,

    pub channel_table: Option<PathBuf>,
    pub environment: Option<Environment>,
    pub elevation_deg: Option<f64>,
    pub seed: u64,
    pub runs: usize,
    pub duration_s: f64,
    pub aggregation: Aggregation,
}

impl Default for Settings {
    fn default() -> Self {
        let sc = ScenarioConfig::default();
        Self {
            altitude_km: sc.altitude_km,
            earth_radius_km: sc.earth.radius_km,
            cell_radius_km: sc.cell_radius_km,
            carrier_ghz: 2.17,
            aperture_diameter_m: sc.aperture_diameter_m,
            gain_floor_db: sc.gain_floor_db,
            peak_eirp_per_prb_dbw: sc.radio.peak_eirp_per_prb_dbw,
            max_gain_dbi: sc.radio.max_gain_dbi,
            latitude_deg: sc.latitude_deg,
            gaseous_model: sc.gaseous_model_enabled,
            gaseous_zenith_db: sc.gaseous_zenith_attenuation_db,
            shadow_and_clutter: false,
            rx_antenna_gain_dbi: sc.receiver.antenna_gain_dbi,
            rx_noise_temperature_k: sc.receiver.equivalent_temperature_k,
            prb_bandwidth_khz: 180.0,
            worst_case_channel_gain_db: sc.worst_case_channel_gain_db,
            ue_speed_mps: sc.ue_speed_mps,
            ue_azimuth_deg: sc.ue_azimuth_deg,
            min_elevation_deg: 20.0,
            slant_km: ScenarioConfig::MEAN_SLANT_KM,
            separation_km: 0.0,
            alpha_deg: 0.0,
            sweep_min_km: None,
            sweep_max_km: None,
            sweep_step_km: None,
            sweep_fixed_km: None,
            alphas_deg: DEFAULT_SWEEP_ALPHAS_DEG.to_vec(),
            channel_mode: ModeSetting::WorstCase,
            figures: vec!["inr".into()],
            solver_alpha_step_deg: 5.0,
            solver_coarse_step_km: 1.0,
            solver_tolerance_km: 0.1,
            channel_table: None,
            environment: None,
            elevation_deg: None,
            seed: 1,
            runs: 20,
            duration_s: 1.0,
            aggregation: Aggregation::Mean,
        }
    }
}

fn parse_f64(v: &str) -> Result<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| anyhow!("expected a number, got '{v}'"))?;
    if !x.is_finite() {
        bail!("expected a finite number, got '{v}'");
    }
    Ok(x)
}

fn parse_bool(v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "on" => Ok(true),
        "false" | "no" | "off" => Ok(false),
        _ => bail!("expected true or false, got '{v}'"),
    }
}

pub fn parse_list(v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_f64)
        .collect()
}

pub fn parse_mode(v: &str) -> Result<ModeSetting> {
    match v {
        "worst_case" | "worst-case" => Ok(ModeSetting::WorstCase),
        "monte_carlo" | "monte-carlo" => Ok(ModeSetting::MonteCarlo),
        _ => bail!("expected worst_case or monte_carlo, got '{v}'"),
    }
}

pub fn parse_aggregation(v: &str) -> Result<Aggregation> {
    if v == "mean" {
        return Ok(Aggregation::Mean);
    }
    match v.strip_prefix('p') {
        Some(p) => Ok(Aggregation::Percentile(parse_f64(p)?)),
        None => bail!("expected mean or pNN, got '{v}'"),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "auto".into(), |x| x.to_string())
}

fn parse_opt(v: &str) -> Result<Option<f64>> {
    if v == "auto" {
        Ok(None)
    } else {
        parse_f64(v).map(Some)
    }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected 'key = value'", i + 1))?;
            s.set(key.trim(), value.trim())
                .with_context(|| format!("line {}: key '{}'", i + 1, key.trim()))?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "altitude_km" => self.altitude_km = parse_f64(v)?,
            "earth_radius_km" => self.earth_radius_km = parse_f64(v)?,
            "cell_radius_km" => self.cell_radius_km = parse_f64(v)?,
            "carrier_ghz" => self.carrier_ghz = parse_f64(v)?,
            "aperture_diameter_m" => self.aperture_diameter_m = parse_f64(v)?,
            "gain_floor_db" => self.gain_floor_db = parse_f64(v)?,
            "peak_eirp_per_prb_dbw" => self.peak_eirp_per_prb_dbw = parse_f64(v)?,
            "max_gain_dbi" => self.max_gain_dbi = parse_f64(v)?,
            "latitude_deg" => self.latitude_deg = parse_f64(v)?,
            "gaseous_model" => self.gaseous_model = parse_bool(v)?,
            "gaseous_zenith_db" => self.gaseous_zenith_db = parse_f64(v)?,
            "shadow_and_clutter" => self.shadow_and_clutter = parse_bool(v)?,
            "rx_antenna_gain_dbi" => self.rx_antenna_gain_dbi = parse_f64(v)?,
            "rx_noise_temperature_k" => self.rx_noise_temperature_k = parse_f64(v)?,
            "prb_bandwidth_khz" => self.prb_bandwidth_khz = parse_f64(v)?,
            "worst_case_channel_gain_db" => self.worst_case_channel_gain_db = parse_f64(v)?,
            "ue_speed_mps" => self.ue_speed_mps = parse_f64(v)?,
            "ue_azimuth_deg" => self.ue_azimuth_deg = parse_f64(v)?,
            "min_elevation_deg" => self.min_elevation_deg = parse_f64(v)?,
            "slant_km" => self.slant_km = parse_f64(v)?,
            "separation_km" => self.separation_km = parse_f64(v)?,
            "alpha_deg" => self.alpha_deg = parse_f64(v)?,
            "sweep_min_km" => self.sweep_min_km = parse_opt(v)?,
            "sweep_max_km" => self.sweep_max_km = parse_opt(v)?,
            "sweep_step_km" => self.sweep_step_km = parse_opt(v)?,
            "sweep_fixed_km" => self.sweep_fixed_km = parse_opt(v)?,
            "alphas_deg" => self.alphas_deg = parse_list(v)?,
            "channel_mode" => self.channel_mode = parse_mode(v)?,
            "figures" => {
                self.figures = v
                    .split(',')
                    .map(|f| f.trim().to_string())
                    .filter(|f| !f.is_empty())
                    .collect()
            }
            "solver_alpha_step_deg" => self.solver_alpha_step_deg = parse_f64(v)?,
            "solver_coarse_step_km" => self.solver_coarse_step_km = parse_f64(v)?,
            "solver_tolerance_km" => self.solver_tolerance_km = parse_f64(v)?,
            "channel_table" => {
                self.channel_table = match v {
                    "builtin" => None,
                    p => Some(PathBuf::from(p)),
                }
            }
            "environment" => {
                self.environment = match v {
                    "all" => None,
                    e => Some(e.parse()?),
                }
            }
            "elevation_deg" => {
                self.elevation_deg = match v {
                    "all" => None,
                    e => Some(parse_f64(e)?),
                }
            }
            "seed" => {
                self.seed = v
                    .parse()
                    .map_err(|_| anyhow!("expected an unsigned integer, got '{v}'"))?
            }
            "runs" => {
                self.runs = v
                    .parse()
                    .map_err(|_| anyhow!("expected an unsigned integer, got '{v}'"))?
            }
            "duration_s" => self.duration_s = parse_f64(v)?,
            "aggregation" => self.aggregation = parse_aggregation(v)?,
            _ => bail!("unknown key"),
        }
        Ok(())
    }

    /// Normalized listing of every key. Feeding it back through
    /// [`Settings::parse`] yields the same settings.
    pub fn echo(&self) -> String {
        let mode = match self.channel_mode {
            ModeSetting::WorstCase => "worst_case",
            ModeSetting::MonteCarlo => "monte_carlo",
        };
        let aggregation = match self.aggregation {
            Aggregation::Mean => "mean".to_string(),
            Aggregation::Percentile(p) => format!("p{p}"),
        };
        let entries: Vec<(&str, String)> = vec![
            ("altitude_km", self.altitude_km.to_string()),
            ("earth_radius_km", self.earth_radius_km.to_string()),
            ("cell_radius_km", self.cell_radius_km.to_string()),
            ("carrier_ghz", self.carrier_ghz.to_string()),
            ("aperture_diameter_m", self.aperture_diameter_m.to_string()),
            ("gain_floor_db", self.gain_floor_db.to_string()),
            (
                "peak_eirp_per_prb_dbw",
                self.peak_eirp_per_prb_dbw.to_string(),
            ),
            ("max_gain_dbi", self.max_gain_dbi.to_string()),
            ("latitude_deg", self.latitude_deg.to_string()),
            ("gaseous_model", self.gaseous_model.to_string()),
            ("gaseous_zenith_db", self.gaseous_zenith_db.to_string()),
            ("shadow_and_clutter", self.shadow_and_clutter.to_string()),
            ("rx_antenna_gain_dbi", self.rx_antenna_gain_dbi.to_string()),
            (
                "rx_noise_temperature_k",
                self.rx_noise_temperature_k.to_string(),
            ),
            ("prb_bandwidth_khz", self.prb_bandwidth_khz.to_string()),
            (
                "worst_case_channel_gain_db",
                self.worst_case_channel_gain_db.to_string(),
            ),
            ("ue_speed_mps", self.ue_speed_mps.to_string()),
            ("ue_azimuth_deg", self.ue_azimuth_deg.to_string()),
            ("min_elevation_deg", self.min_elevation_deg.to_string()),
            ("slant_km", self.slant_km.to_string()),
            ("separation_km", self.separation_km.to_string()),
            ("alpha_deg", self.alpha_deg.to_string()),
            ("sweep_min_km", fmt_opt(self.sweep_min_km)),
            ("sweep_max_km", fmt_opt(self.sweep_max_km)),
            ("sweep_step_km", fmt_opt(self.sweep_step_km)),
            ("sweep_fixed_km", fmt_opt(self.sweep_fixed_km)),
            ("alphas_deg", fmt_list(&self.alphas_deg)),
            ("channel_mode", mode.into()),
            ("figures", self.figures.join(",")),
            (
                "solver_alpha_step_deg",
                self.solver_alpha_step_deg.to_string(),
            ),
            (
                "solver_coarse_step_km",
                self.solver_coarse_step_km.to_string(),
            ),
            ("solver_tolerance_km", self.solver_tolerance_km.to_string()),
            (
                "channel_table",
                self.channel_table
                    .as_ref()
                    .map_or_else(|| "builtin".into(), |p| p.display().to_string()),
            ),
            (
                "environment",
                self.environment
                    .map_or_else(|| "all".into(), |e| e.name().into()),
            ),
            (
                "elevation_deg",
                self.elevation_deg
                    .map_or_else(|| "all".into(), |e| e.to_string()),
            ),
            ("seed", self.seed.to_string()),
            ("runs", self.runs.to_string()),
            ("duration_s", self.duration_s.to_string()),
            ("aggregation", aggregation),
        ];
        let mut out = String::from("# effective config\n");
        for (k, v) in entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let sc = ScenarioConfig {
            earth: ntnsim::EarthModel::new(self.earth_radius_km)?,
            altitude_km: self.altitude_km,
            cell_radius_km: self.cell_radius_km,
            carrier_hz: self.carrier_ghz * 1e9,
            aperture_diameter_m: self.aperture_diameter_m,
            gain_floor_db: self.gain_floor_db,
            radio: SatelliteRadioConfig {
                peak_eirp_per_prb_dbw: self.peak_eirp_per_prb_dbw,
                max_gain_dbi: self.max_gain_dbi,
            },
            latitude_deg: self.latitude_deg,
            gaseous_model_enabled: self.gaseous_model,
            gaseous_zenith_attenuation_db: self.gaseous_zenith_db,
            shadow_and_clutter_enabled: self.shadow_and_clutter,
            receiver: ReceiverConfig {
                antenna_gain_dbi: self.rx_antenna_gain_dbi,
                equivalent_temperature_k: self.rx_noise_temperature_k,
                prb_bandwidth_hz: self.prb_bandwidth_khz * 1e3,
            },
            worst_case_channel_gain_db: self.worst_case_channel_gain_db,
            ue_speed_mps: self.ue_speed_mps,
            ue_azimuth_deg: self.ue_azimuth_deg,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn solver_alphas(&self) -> Result<Vec<f64>> {
        let step = self.solver_alpha_step_deg;
        if !(step > 0.0 && step <= 180.0) {
            bail!("solver_alpha_step_deg must be in (0, 180], got {step}");
        }
        let n = (180.0 / step + 1e-9).floor() as usize;
        let mut v: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
        if 180.0 - v[n] > 1e-9 {
            v.push(180.0);
        }
        Ok(v)
    }
}
