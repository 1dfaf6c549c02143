use super::ChannelSeries;
use crate::error::{Error, Result};

/// Two-sided 95 % quantile of the standard normal distribution.
const Z_95: f64 = 1.959_963_984_540_054;

/// Across-run mean channel gain with a normal-approximation 95 % interval.
#[derive(Debug, Clone, PartialEq)]
pub struct GainStatistics {
    pub mean_db: f64,
    pub ci95_low_db: f64,
    pub ci95_high_db: f64,
    pub per_run_db: Vec<f64>,
}

impl GainStatistics {
    pub fn from_run_gains(per_run_db: Vec<f64>) -> Result<Self> {
        let n = per_run_db.len();
        if n < 2 {
            return Err(Error::Precondition(format!(
                "confidence interval needs at least 2 runs, got {n}"
            )));
        }
        let mean = per_run_db.iter().sum::<f64>() / n as f64;
        let var = per_run_db.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let half = Z_95 * (var / n as f64).sqrt();
        Ok(Self {
            mean_db: mean,
            ci95_low_db: mean - half,
            ci95_high_db: mean + half,
            per_run_db,
        })
    }
}

/// `10 log10(mean |h|^2)` of one series.
pub fn series_gain_db(series: &ChannelSeries) -> Result<f64> {
    if series.is_empty() {
        return Err(Error::Precondition("empty channel series".into()));
    }
    Ok(10.0 * series.mean_power().log10())
}

pub fn mean_channel_gain_db(runs: &[ChannelSeries]) -> Result<GainStatistics> {
    let gains = runs
        .iter()
        .map(series_gain_db)
        .collect::<Result<Vec<_>>>()?;
    GainStatistics::from_run_gains(gains)
}
