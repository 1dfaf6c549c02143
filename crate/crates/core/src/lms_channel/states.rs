use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{ChannelState, LmsStateParams};
use crate::error::{domain, Error, Result};

/// One sojourn in a channel state. `start` and `duration` share the unit of
/// the state parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateInterval {
    pub state: ChannelState,
    pub start: f64,
    pub duration: f64,
}

impl StateInterval {
    pub fn end(&self) -> f64 {
        self.start + self.duration
    }
}

fn draw_duration<R: Rng + ?Sized>(p: &LmsStateParams, rng: &mut R) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    (p.duration_mu + p.duration_sigma * z)
        .exp()
        .max(p.duration_min)
}

/// Alternating GOOD/BAD sojourns covering exactly `total_duration`.
///
/// The first state is GOOD with probability equal to its share of the mean
/// cycle length; the final interval is truncated at `total_duration`.
pub fn draw_state_sequence<R: Rng + ?Sized>(
    good: &LmsStateParams,
    bad: &LmsStateParams,
    total_duration: f64,
    rng: &mut R,
) -> Result<Vec<StateInterval>> {
    if !(total_duration.is_finite() && total_duration > 0.0) {
        return Err(domain("total duration", total_duration, "(0, inf)"));
    }
    good.validate()?;
    bad.validate()?;
    if good.duration_unit != bad.duration_unit {
        return Err(Error::Config(
            "GOOD and BAD state durations use different units".into(),
        ));
    }
    let (mg, mb) = (good.mean_duration(), bad.mean_duration());
    if (mg + mb).is_nan() || mg + mb <= 0.0 {
        return Err(Error::Precondition(
            "state durations collapse to zero".into(),
        ));
    }

    let p_good = mg / (mg + mb);
    let mut state = if rng.random::<f64>() < p_good {
        ChannelState::Good
    } else {
        ChannelState::Bad
    };

    let mut intervals = Vec::new();
    let mut t = 0.0;
    while t < total_duration {
        let params = match state {
            ChannelState::Good => good,
            ChannelState::Bad => bad,
        };
        let d = draw_duration(params, rng);
        if d <= 0.0 {
            return Err(Error::Precondition(format!(
                "{state} state drew a non-positive duration"
            )));
        }
        let duration = d.min(total_duration - t);
        intervals.push(StateInterval {
            state,
            start: t,
            duration,
        });
        t += d;
        state = state.other();
    }
    Ok(intervals)
}
