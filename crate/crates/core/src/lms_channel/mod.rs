//! Two-state (GOOD/BAD) land-mobile-satellite fading channel.
//!
//! State durations follow a semi-Markov chain with log-normal sojourn times.
//! Within each state occurrence the fading is Loo distributed: a log-normal
//! direct component plus Rayleigh diffuse multipath. The state statistics are
//! loaded from a parameter table (see [`table`]).

mod doppler;
mod experiment;
mod loo;
mod series;
mod states;
mod stats;
pub mod table;

pub use doppler::{doppler_shift_hz, satellite_speed, ue_max_doppler_hz, DopplerConfig};
pub use experiment::{simulate_gain, GainExperiment};
pub use loo::{draw_loo_triplet, FixedTriplets, LooDiagnostics, StatePair, TripletSource};
pub use series::{generate_series, ChannelSeries, SeriesOptions, MIN_OVERSAMPLING};
pub use states::{draw_state_sequence, StateInterval};
pub use stats::{mean_channel_gain_db, series_gain_db, GainStatistics};
pub use table::{Environment, LmsEnvironmentTable, TableSource};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelState {
    Good,
    Bad,
}

impl ChannelState {
    pub fn other(self) -> Self {
        match self {
            Self::Good => Self::Bad,
            Self::Bad => Self::Good,
        }
    }
}

impl std::fmt::Display for ChannelState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Good => "good",
            Self::Bad => "bad",
        })
    }
}

/// Whether state durations are measured in travelled distance or time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DurationUnit {
    Seconds,
    Meters,
}

/// Loo parameters of one state occurrence, all in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LooTriplet {
    /// Mean of the direct-path level, `M_A`.
    pub mean_direct_db: f64,
    /// Standard deviation of the direct-path level, `Sigma_A`.
    pub std_direct_db: f64,
    /// Mean diffuse multipath power, `MP`.
    pub multipath_power_db: f64,
}

/// Statistics of one channel state.
///
/// `M_A ~ N(mu_ma, sigma_ma)`, `Sigma_A = g1 * M_A + g2`, `MP = h1 * M_A + h2`.
/// Durations are log-normal: `ln D ~ N(duration_mu, duration_sigma)`, clamped
/// below at `duration_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmsStateParams {
    pub mu_ma_db: f64,
    pub sigma_ma_db: f64,
    pub g1: f64,
    pub g2_db: f64,
    pub h1: f64,
    pub h2_db: f64,
    pub duration_mu: f64,
    pub duration_sigma: f64,
    pub duration_min: f64,
    pub duration_unit: DurationUnit,
}

impl LmsStateParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.mu_ma_db,
            self.sigma_ma_db,
            self.g1,
            self.g2_db,
            self.h1,
            self.h2_db,
            self.duration_mu,
            self.duration_sigma,
            self.duration_min,
        ];
        if let Some(v) = finite.iter().find(|v| !v.is_finite()) {
            return Err(domain("state parameter", *v, "finite values"));
        }
        if self.sigma_ma_db < 0.0 {
            return Err(domain("sigma_MA [dB]", self.sigma_ma_db, "[0, inf)"));
        }
        if self.duration_sigma < 0.0 {
            return Err(domain("duration sigma", self.duration_sigma, "[0, inf)"));
        }
        if self.duration_min < 0.0 {
            return Err(domain("minimum duration", self.duration_min, "[0, inf)"));
        }
        Ok(())
    }

    /// Expected state duration, `E[max(D, duration_min)]`.
    pub fn mean_duration(&self) -> f64 {
        let m = self.duration_min;
        if self.duration_sigma == 0.0 {
            return self.duration_mu.exp().max(m);
        }
        let s = self.duration_sigma;
        let unclamped = (self.duration_mu + 0.5 * s * s).exp();
        if m <= 0.0 {
            return unclamped;
        }
        let a = (m.ln() - self.duration_mu) / s;
        m * normal_cdf(a) + unclamped * normal_cdf(s - a)
    }
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}
