use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;

use super::doppler::{doppler_shift_hz, ue_max_doppler_hz, DopplerConfig};
use super::{ChannelState, DurationUnit, LooTriplet, StateInterval, TripletSource};
use crate::error::{domain, Error, Result};

/// Minimum ratio between the sample rate and the occupied Doppler bandwidth.
pub const MIN_OVERSAMPLING: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Correlation time of the direct-path level process, seconds. Zero gives
    /// an uncorrelated level per sample.
    pub direct_correlation_s: f64,
    /// Length of the linear cross-fade after each state change, seconds.
    pub transition_s: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            direct_correlation_s: 1.0,
            transition_s: 0.0,
        }
    }
}

impl SeriesOptions {
    /// Options with the direct-path correlation set to a state's minimum
    /// duration, converted to seconds.
    pub fn with_correlation_from(
        duration_min: f64,
        unit: DurationUnit,
        ue_speed_mps: f64,
    ) -> Result<Self> {
        Ok(Self {
            direct_correlation_s: to_seconds(duration_min, unit, ue_speed_mps)?,
            ..Self::default()
        })
    }
}

/// Complex channel coefficients with the state active at each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSeries {
    pub sample_rate_hz: f64,
    pub samples: Vec<Complex64>,
    pub state_track: Vec<ChannelState>,
}

impl ChannelSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Mean of `|h|^2` over the series (linear).
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|h| h.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }
}

fn to_seconds(value: f64, unit: DurationUnit, ue_speed_mps: f64) -> Result<f64> {
    match unit {
        DurationUnit::Seconds => Ok(value),
        DurationUnit::Meters if ue_speed_mps > 0.0 => Ok(value / ue_speed_mps),
        DurationUnit::Meters => Err(Error::Precondition(
            "distance-based state durations need a moving UE".into(),
        )),
    }
}

/// Renders a state sequence into complex channel coefficients.
///
/// Each interval draws its Loo parameters from `source`. The direct path has a
/// log-normal level (first-order filtered Gaussian in dB) and rotates at the
/// line-of-sight UE Doppler. The diffuse part is a unit-power complex Gaussian
/// process with a Jakes spectrum at the UE's maximum Doppler, built by inverse
/// FFT, scaled to the interval's multipath power. The satellite Doppler shift
/// is applied to the sum.
pub fn generate_series<S: TripletSource, R: Rng + ?Sized>(
    source: &mut S,
    intervals: &[StateInterval],
    unit: DurationUnit,
    doppler: &DopplerConfig,
    sample_rate_hz: f64,
    options: &SeriesOptions,
    rng: &mut R,
) -> Result<ChannelSeries> {
    doppler.validate()?;
    if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
        return Err(domain("sample rate [Hz]", sample_rate_hz, "(0, inf)"));
    }
    let bandwidth = doppler.total_bandwidth_hz();
    if sample_rate_hz < MIN_OVERSAMPLING * bandwidth {
        return Err(Error::Precondition(format!(
            "sample rate {sample_rate_hz} Hz is below {MIN_OVERSAMPLING} x the {bandwidth:.3} Hz Doppler bandwidth"
        )));
    }
    if intervals.is_empty() {
        return Err(Error::Precondition("empty state sequence".into()));
    }
    if !(options.direct_correlation_s >= 0.0 && options.transition_s >= 0.0) {
        return Err(Error::Config(
            "correlation and transition lengths must be non-negative".into(),
        ));
    }

    let speed = doppler.ue_speed_mps;
    let mut boundaries = Vec::with_capacity(intervals.len() + 1);
    for iv in intervals {
        boundaries.push((to_seconds(iv.start, unit, speed)? * sample_rate_hz).round() as usize);
    }
    let last = intervals.last().expect("non-empty");
    let n = (to_seconds(last.end(), unit, speed)? * sample_rate_hz).round() as usize;
    boundaries.push(n);
    if n == 0 {
        return Err(Error::Precondition(
            "state sequence is shorter than one sample".into(),
        ));
    }

    let triplets: Vec<LooTriplet> = intervals
        .iter()
        .map(|iv| source.triplet(iv.state, rng))
        .collect();
    let phase0 = rng.random::<f64>() * 2.0 * PI;

    let rho = if options.direct_correlation_s > 0.0 {
        (-1.0 / (sample_rate_hz * options.direct_correlation_s)).exp()
    } else {
        0.0
    };
    let innovation = (1.0 - rho * rho).sqrt();
    let mut level = Vec::with_capacity(n);
    let mut x: f64 = StandardNormal.sample(rng);
    level.push(x);
    for _ in 1..n {
        let z: f64 = StandardNormal.sample(rng);
        x = rho * x + innovation * z;
        level.push(x);
    }

    let diffuse = jakes_process(n, ue_max_doppler_hz(doppler), sample_rate_hz, rng);

    let f_sat = doppler_shift_hz(doppler);
    let f_los = ue_max_doppler_hz(doppler)
        * doppler.ue_azimuth_deg.to_radians().cos()
        * doppler.elevation_deg.to_radians().cos();
    let transition = (options.transition_s * sample_rate_hz).round() as usize;

    let mut samples = Vec::with_capacity(n);
    let mut state_track = Vec::with_capacity(n);
    let mut k = 0;
    for i in 0..n {
        while i >= boundaries[k + 1] {
            k += 1;
        }
        let cur = &triplets[k];
        let (mean_db, std_db, mp_amp) = {
            let amp = |t: &LooTriplet| 10f64.powf(t.multipath_power_db / 20.0);
            let since = i - boundaries[k];
            if k > 0 && since < transition {
                let prev = &triplets[k - 1];
                let w = since as f64 / transition as f64;
                (
                    (1.0 - w) * prev.mean_direct_db + w * cur.mean_direct_db,
                    (1.0 - w) * prev.std_direct_db + w * cur.std_direct_db,
                    (1.0 - w) * amp(prev) + w * amp(cur),
                )
            } else {
                (cur.mean_direct_db, cur.std_direct_db, amp(cur))
            }
        };
        let t = i as f64 / sample_rate_hz;
        let direct_amp = 10f64.powf((mean_db + std_db * level[i]) / 20.0);
        let direct = Complex64::from_polar(direct_amp, 2.0 * PI * f_los * t + phase0);
        let h = (direct + diffuse[i] * mp_amp) * Complex64::from_polar(1.0, 2.0 * PI * f_sat * t);
        samples.push(h);
        state_track.push(intervals[k].state);
    }

    Ok(ChannelSeries {
        sample_rate_hz,
        samples,
        state_track,
    })
}

/// Unit-power complex Gaussian sequence of length `n` whose spectrum is the
/// classical Jakes shape limited to `|f| < max_doppler_hz`.
fn jakes_process<R: Rng + ?Sized>(
    n: usize,
    max_doppler_hz: f64,
    sample_rate_hz: f64,
    rng: &mut R,
) -> Vec<Complex64> {
    let bin_hz = sample_rate_hz / n as f64;
    let weights: Vec<f64> = (0..n)
        .map(|k| {
            let f = if k <= n / 2 {
                k as f64 * bin_hz
            } else {
                (k as f64 - n as f64) * bin_hz
            };
            if k == 0 {
                1.0
            } else if f.abs() < max_doppler_hz {
                1.0 / (1.0 - (f / max_doppler_hz).powi(2)).sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let total: f64 = weights.iter().sum();

    let mut buf: Vec<Complex64> = weights
        .iter()
        .map(|w| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * (0.5 * w / total).sqrt()
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf
}
