use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{ChannelState, LmsStateParams, LooTriplet};

/// Counters for corrections applied while drawing Loo parameters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LooDiagnostics {
    /// Draws where `g1 * M_A + g2` came out negative and was clamped to 0.
    pub clamped_std: u64,
}

/// Draws the Loo parameters for one state occurrence.
pub fn draw_loo_triplet<R: Rng + ?Sized>(
    state: &LmsStateParams,
    rng: &mut R,
    diagnostics: &mut LooDiagnostics,
) -> LooTriplet {
    let mean_direct_db = if state.sigma_ma_db > 0.0 {
        let z: f64 = StandardNormal.sample(rng);
        state.mu_ma_db + state.sigma_ma_db * z
    } else {
        state.mu_ma_db
    };
    let mut std_direct_db = state.g1 * mean_direct_db + state.g2_db;
    if std_direct_db < 0.0 {
        std_direct_db = 0.0;
        diagnostics.clamped_std += 1;
    }
    LooTriplet {
        mean_direct_db,
        std_direct_db,
        multipath_power_db: state.h1 * mean_direct_db + state.h2_db,
    }
}

/// Supplies the Loo parameters for each state occurrence of a series.
pub trait TripletSource {
    fn triplet<R: Rng + ?Sized>(&mut self, state: ChannelState, rng: &mut R) -> LooTriplet;
}

/// Draws triplets from the statistics of the GOOD and BAD states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePair {
    pub good: LmsStateParams,
    pub bad: LmsStateParams,
    pub diagnostics: LooDiagnostics,
}

impl StatePair {
    pub fn new(good: LmsStateParams, bad: LmsStateParams) -> Self {
        Self {
            good,
            bad,
            diagnostics: LooDiagnostics::default(),
        }
    }

    pub fn params(&self, state: ChannelState) -> &LmsStateParams {
        match state {
            ChannelState::Good => &self.good,
            ChannelState::Bad => &self.bad,
        }
    }
}

impl TripletSource for StatePair {
    fn triplet<R: Rng + ?Sized>(&mut self, state: ChannelState, rng: &mut R) -> LooTriplet {
        let params = *self.params(state);
        draw_loo_triplet(&params, rng, &mut self.diagnostics)
    }
}

/// Fixed triplets per state; consumes no randomness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedTriplets {
    pub good: LooTriplet,
    pub bad: LooTriplet,
}

impl FixedTriplets {
    pub fn same(triplet: LooTriplet) -> Self {
        Self {
            good: triplet,
            bad: triplet,
        }
    }
}

impl TripletSource for FixedTriplets {
    fn triplet<R: Rng + ?Sized>(&mut self, state: ChannelState, _rng: &mut R) -> LooTriplet {
        match state {
            ChannelState::Good => self.good,
            ChannelState::Bad => self.bad,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lms_channel::DurationUnit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn state(mu: f64, sigma: f64, g1: f64, g2: f64, h1: f64, h2: f64) -> LmsStateParams {
        LmsStateParams {
            mu_ma_db: mu,
            sigma_ma_db: sigma,
            g1,
            g2_db: g2,
            h1,
            h2_db: h2,
            duration_mu: 0.0,
            duration_sigma: 0.0,
            duration_min: 0.0,
            duration_unit: DurationUnit::Seconds,
        }
    }

    #[test]
    fn deterministic_when_sigma_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut diag = LooDiagnostics::default();
        let t = draw_loo_triplet(&state(-2.5, 0.0, 0.1, 1.0, 0.2, -15.0), &mut rng, &mut diag);
        assert_eq!(t.mean_direct_db, -2.5);
        assert!((t.std_direct_db - 0.75).abs() < 1e-12);
        assert!((t.multipath_power_db - -15.5).abs() < 1e-12);
    }

    #[test]
    fn affine_terms_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut diag = LooDiagnostics::default();
        for _ in 0..100 {
            let t = draw_loo_triplet(&state(-1.0, 2.0, 0.0, 1.5, 0.0, -12.0), &mut rng, &mut diag);
            assert_eq!(t.std_direct_db, 1.5);
            assert_eq!(t.multipath_power_db, -12.0);
        }
        assert_eq!(diag.clamped_std, 0);
    }

    #[test]
    fn negative_std_is_clamped_and_counted() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut diag = LooDiagnostics::default();
        let t = draw_loo_triplet(&state(-10.0, 0.0, 0.5, 1.0, 0.0, 0.0), &mut rng, &mut diag);
        assert_eq!(t.std_direct_db, 0.0);
        assert_eq!(diag.clamped_std, 1);
    }

    #[test]
    fn mean_direct_is_normal() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut pair = StatePair::new(
            state(-3.0, 2.0, 0.0, 0.0, 0.0, 0.0),
            state(-9.0, 1.0, 0.0, 0.0, 0.0, 0.0),
        );
        let n = 100_000;
        let draws: Vec<f64> = (0..n)
            .map(|_| pair.triplet(ChannelState::Good, &mut rng).mean_direct_db)
            .collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((mean + 3.0).abs() < 0.03, "{mean}");
        assert!((var.sqrt() - 2.0).abs() < 0.03, "{var}");
    }
}
