use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::series::MIN_OVERSAMPLING;
use super::{
    draw_state_sequence, generate_series, series_gain_db, DopplerConfig, GainStatistics,
    SeriesOptions, StatePair,
};
use crate::error::{domain, Result};
use crate::seed::derive_seed;

/// Sample rate used when the channel has no Doppler content at all, Hz.
const STATIC_SAMPLE_RATE_HZ: f64 = 10.0;

/// Repeated independent channel realizations for one state pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainExperiment {
    /// Length of each realization, in the unit of the state durations.
    pub duration: f64,
    pub runs: usize,
    pub seed: u64,
    /// Defaults to the smallest admissible rate for the Doppler content.
    pub sample_rate_hz: Option<f64>,
    /// Defaults to a direct-path correlation equal to the GOOD state's
    /// minimum duration.
    pub options: Option<SeriesOptions>,
}

impl GainExperiment {
    pub fn sample_rate_for(&self, doppler: &DopplerConfig) -> f64 {
        self.sample_rate_hz.unwrap_or_else(|| {
            let bw = doppler.total_bandwidth_hz();
            if bw > 0.0 {
                MIN_OVERSAMPLING * bw
            } else {
                STATIC_SAMPLE_RATE_HZ
            }
        })
    }
}

/// Runs the experiment and summarizes the per-run gains. Run `i` uses the
/// seed `derive_seed(seed, [i])`, so results do not depend on scheduling.
pub fn simulate_gain(
    pair: &StatePair,
    doppler: &DopplerConfig,
    experiment: &GainExperiment,
) -> Result<GainStatistics> {
    if !(experiment.duration.is_finite() && experiment.duration > 0.0) {
        return Err(domain(
            "realization length",
            experiment.duration,
            "(0, inf)",
        ));
    }
    let fs = experiment.sample_rate_for(doppler);
    let unit = pair.good.duration_unit;
    let options = match experiment.options {
        Some(o) => o,
        None => SeriesOptions::with_correlation_from(
            pair.good.duration_min,
            unit,
            doppler.ue_speed_mps,
        )?,
    };

    let gains = (0..experiment.runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(experiment.seed, &[run as u64]));
            let mut source = *pair;
            let intervals =
                draw_state_sequence(&pair.good, &pair.bad, experiment.duration, &mut rng)?;
            let series = generate_series(
                &mut source,
                &intervals,
                unit,
                doppler,
                fs,
                &options,
                &mut rng,
            )?;
            series_gain_db(&series)
        })
        .collect::<Result<Vec<_>>>()?;
    GainStatistics::from_run_gains(gains)
}
