//! Link-budget sweeps and the 0 dB-INR separation solver.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::geometry::{
    check_itu_validity, max_separation_for_min_elevation, GeometrySolution, ItuValidityReport,
    ITU_MIN_ELEVATION_DEG,
};
use crate::link_budget::{link_at, LinkBudgetBreakdown};
use crate::lms_channel::{
    simulate_gain, DopplerConfig, Environment, GainExperiment, LmsEnvironmentTable,
};
use crate::scenario::ScenarioConfig;
use crate::seed::{coordinate, derive_seed};

/// Azimuths plotted for every sweep, degrees.
pub const DEFAULT_SWEEP_ALPHAS_DEG: [f64; 5] = [0.0, 45.0, 90.0, 135.0, 180.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    SlantRange,
    Separation,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            Self::SlantRange => "slant_range_km",
            Self::Separation => "separation_km",
        }
    }
}

/// Inclusive arithmetic grid `min, min + step, ...` up to `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        let r = Self { min, max, step };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::Config(format!(
                "sweep range needs min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(domain("sweep step", self.step, "(0, inf)"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.min + i as f64 * self.step).collect()
    }
}

/// How the per-run Monte Carlo INR values are reduced to one row value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aggregation {
    Mean,
    /// Nearest-rank percentile in `(0, 100]`.
    Percentile(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloSpec {
    pub seed: u64,
    pub runs: usize,
    pub environment: Environment,
    /// Realization length in the unit of the table's state durations.
    pub duration: f64,
    pub aggregation: Aggregation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelMode {
    /// Channel gain pinned to the scenario's worst case.
    WorstCase,
    MonteCarlo(MonteCarloSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub range: SweepRange,
    /// Value of the variable that is not swept, km.
    pub fixed: f64,
    pub alphas_deg: Vec<f64>,
    pub channel_mode: ChannelMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if self.alphas_deg.is_empty() {
            return Err(Error::Config("sweep needs at least one alpha".into()));
        }
        if let Some(a) = self.alphas_deg.iter().find(|a| !(0.0..=180.0).contains(*a)) {
            return Err(domain("alpha [deg]", *a, "[0, 180]"));
        }
        if let ChannelMode::MonteCarlo(mc) = &self.channel_mode {
            if mc.runs < 1 {
                return Err(Error::Config(
                    "Monte Carlo mode needs at least one run".into(),
                ));
            }
            if let Aggregation::Percentile(p) = mc.aggregation {
                if !(p > 0.0 && p <= 100.0) {
                    return Err(domain("percentile", p, "(0, 100]"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub alpha_deg: f64,
    pub geometry: GeometrySolution,
    pub budget: LinkBudgetBreakdown,
    pub itu: ItuValidityReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub variable: SweepVariable,
    pub fixed: f64,
    /// Ordered by alpha, then by the swept value.
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn rows_for_alpha(&self, alpha_deg: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.alpha_deg == alpha_deg)
    }
}

/// Evaluates the link budget on every (alpha, value) of the sweep. Rows that
/// violate the two-state model's applicability are kept and flagged.
pub fn run_sweep(
    spec: &SweepSpec,
    scenario: &ScenarioConfig,
    table: Option<&LmsEnvironmentTable>,
) -> Result<SweepResult> {
    spec.validate()?;
    scenario.validate()?;
    if matches!(spec.channel_mode, ChannelMode::MonteCarlo(_)) && table.is_none() {
        return Err(Error::Config(
            "Monte Carlo mode needs a channel parameter table".into(),
        ));
    }

    let mut alphas = spec.alphas_deg.clone();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    let values = spec.range.values();
    let points: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| values.iter().map(move |&v| (a, v)))
        .collect();

    let rows = points
        .par_iter()
        .map(|&(alpha, value)| {
            evaluate_row(spec, scenario, table, alpha, value).map_err(|e| Error::Row {
                variable: spec.variable.name(),
                value,
                alpha_deg: alpha,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepResult {
        variable: spec.variable,
        fixed: spec.fixed,
        rows,
    })
}

fn evaluate_row(
    spec: &SweepSpec,
    scenario: &ScenarioConfig,
    table: Option<&LmsEnvironmentTable>,
    alpha: f64,
    value: f64,
) -> Result<SweepRow> {
    let (slant, separation) = match spec.variable {
        SweepVariable::SlantRange => (value, spec.fixed),
        SweepVariable::Separation => (spec.fixed, value),
    };
    let (geometry, mut budget) = link_at(
        scenario,
        slant,
        separation,
        alpha,
        scenario.worst_case_channel_gain_db,
    )?;

    if let (ChannelMode::MonteCarlo(mc), Some(table)) = (&spec.channel_mode, table) {
        let gain = monte_carlo_gain(mc, scenario, table, &geometry, alpha, value)?;
        let shift = gain - budget.channel_gain_db;
        budget.channel_gain_db = gain;
        budget.rx_power_dbm += shift;
        budget.inr_db = budget.rx_power_dbm - budget.noise_dbm;
    }

    let itu = check_itu_validity(
        &geometry,
        scenario.carrier_hz,
        scenario.receiver.prb_bandwidth_hz,
    );
    Ok(SweepRow {
        value,
        alpha_deg: alpha,
        geometry,
        budget,
        itu,
    })
}

fn monte_carlo_gain(
    mc: &MonteCarloSpec,
    scenario: &ScenarioConfig,
    table: &LmsEnvironmentTable,
    geometry: &GeometrySolution,
    alpha: f64,
    value: f64,
) -> Result<f64> {
    let elevation = LmsEnvironmentTable::nearest_elevation(mc.environment, geometry.elevation_deg);
    let pair = table.get(mc.environment, elevation as f64, "S")?;
    let doppler = DopplerConfig {
        satellite_altitude_km: scenario.altitude_km,
        earth: scenario.earth,
        elevation_deg: geometry.elevation_deg,
        carrier_hz: scenario.carrier_hz,
        ue_speed_mps: scenario.ue_speed_mps,
        ue_azimuth_deg: scenario.ue_azimuth_deg,
    };
    let experiment = GainExperiment {
        duration: mc.duration,
        runs: mc.runs.max(2),
        seed: derive_seed(mc.seed, &[coordinate(alpha), coordinate(value)]),
        sample_rate_hz: None,
        options: None,
    };
    let stats = simulate_gain(&pair, &doppler, &experiment)?;
    Ok(match mc.aggregation {
        // INR is affine in the gain, so the mean INR is the INR of the mean gain.
        Aggregation::Mean => stats.mean_db,
        Aggregation::Percentile(p) => {
            let mut g = stats.per_run_db.clone();
            g.sort_by(f64::total_cmp);
            let rank = ((p / 100.0) * g.len() as f64).ceil().max(1.0) as usize;
            g[rank - 1]
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    /// Azimuths probed for the binding direction, degrees.
    pub alphas_deg: Vec<f64>,
    pub coarse_step_km: f64,
    pub tolerance_km: f64,
    /// Elevation below which the two-state model stops applying, degrees.
    pub min_elevation_deg: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            alphas_deg: (0..=36).map(|i| i as f64 * 5.0).collect(),
            coarse_step_km: 1.0,
            tolerance_km: 0.1,
            min_elevation_deg: ITU_MIN_ELEVATION_DEG,
        }
    }
}

impl SolverOptions {
    pub fn with_alphas(alphas_deg: Vec<f64>) -> Self {
        Self {
            alphas_deg,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.alphas_deg.is_empty() {
            return Err(Error::Config("solver needs at least one alpha".into()));
        }
        if !(self.coarse_step_km > 0.0 && self.tolerance_km > 0.0) {
            return Err(Error::Config("solver steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroDbSeparation {
    /// Every separation from `separation_km` out to the validity bound keeps
    /// INR at or below 0 dB in every probed azimuth. `binding_alpha_deg` is
    /// `None` when INR never exceeds 0 dB.
    Resolved {
        separation_km: f64,
        binding_alpha_deg: Option<f64>,
        validity_bound_km: f64,
    },
    /// INR is still above 0 dB at the validity bound in this azimuth.
    Unresolvable {
        alpha_deg: f64,
        validity_bound_km: f64,
    },
}

impl ZeroDbSeparation {
    pub fn separation_km(&self) -> Option<f64> {
        match self {
            Self::Resolved { separation_km, .. } => Some(*separation_km),
            Self::Unresolvable { .. } => None,
        }
    }

    pub fn binding_alpha_deg(&self) -> Option<f64> {
        match self {
            Self::Resolved {
                binding_alpha_deg, ..
            } => *binding_alpha_deg,
            Self::Unresolvable { alpha_deg, .. } => Some(*alpha_deg),
        }
    }
}

/// Worst-case INR at one (slant, separation, alpha).
pub fn worst_case_inr_db(
    scenario: &ScenarioConfig,
    slant_km: f64,
    separation_km: f64,
    alpha_deg: f64,
) -> Result<f64> {
    let (_, b) = link_at(
        scenario,
        slant_km,
        separation_km,
        alpha_deg,
        scenario.worst_case_channel_gain_db,
    )?;
    Ok(b.inr_db)
}

enum AlphaOutcome {
    Compliant(f64),
    Unresolvable,
}

fn guard_distance_for_alpha(
    scenario: &ScenarioConfig,
    slant_km: f64,
    alpha: f64,
    bound: f64,
    opts: &SolverOptions,
) -> Result<AlphaOutcome> {
    let inr = |s: f64| worst_case_inr_db(scenario, slant_km, s, alpha);

    let n = (bound / opts.coarse_step_km).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| i as f64 * opts.coarse_step_km).collect();
    if bound - grid[n] > 1e-9 {
        grid.push(bound);
    }
    let mut last_positive = None;
    for (i, &s) in grid.iter().enumerate() {
        if inr(s)? > 0.0 {
            last_positive = Some(i);
        }
    }
    let Some(i) = last_positive else {
        return Ok(AlphaOutcome::Compliant(0.0));
    };
    if i + 1 == grid.len() {
        return Ok(AlphaOutcome::Unresolvable);
    }
    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
    while hi - lo > opts.tolerance_km {
        let mid = 0.5 * (lo + hi);
        if inr(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AlphaOutcome::Compliant(hi))
}

/// Smallest separation beyond which worst-case INR stays at or below 0 dB for
/// every probed azimuth, up to the two-state model's elevation bound.
pub fn zero_db_separation(
    slant_km: f64,
    scenario: &ScenarioConfig,
    opts: &SolverOptions,
) -> Result<ZeroDbSeparation> {
    opts.validate()?;
    scenario.validate()?;
    let bound = max_separation_for_min_elevation(slant_km, opts.min_elevation_deg, scenario)?;

    let outcomes = opts
        .alphas_deg
        .par_iter()
        .map(|&a| guard_distance_for_alpha(scenario, slant_km, a, bound, opts).map(|o| (a, o)))
        .collect::<Result<Vec<_>>>()?;

    let mut best: Option<(f64, f64)> = None;
    for (alpha, outcome) in outcomes {
        match outcome {
            AlphaOutcome::Unresolvable => {
                return Ok(ZeroDbSeparation::Unresolvable {
                    alpha_deg: alpha,
                    validity_bound_km: bound,
                })
            }
            // Ties go to the larger azimuth.
            AlphaOutcome::Compliant(s)
                if s > 0.0 && best.is_none_or(|(bs, ba)| s > bs || (s == bs && alpha > ba)) =>
            {
                best = Some((s, alpha));
            }
            _ => {}
        }
    }
    Ok(ZeroDbSeparation::Resolved {
        separation_km: best.map_or(0.0, |b| b.0),
        binding_alpha_deg: best.map(|b| b.1),
        validity_bound_km: bound,
    })
}

/// 0 dB separation for each slant range, in input order.
pub fn separation_profile(
    slants_km: &[f64],
    scenario: &ScenarioConfig,
    opts: &SolverOptions,
) -> Result<Vec<(f64, ZeroDbSeparation)>> {
    slants_km
        .iter()
        .map(|&s| zero_db_separation(s, scenario, opts).map(|z| (s, z)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverOptions {
    pub solver: SolverOptions,
    pub slant_min_km: f64,
    pub slant_max_km: f64,
    pub scan_step_km: f64,
    pub tolerance_km: f64,
}

impl Default for CrossoverOptions {
    fn default() -> Self {
        Self {
            solver: SolverOptions::default(),
            slant_min_km: 600.0,
            slant_max_km: ScenarioConfig::MAX_STUDY_SLANT_KM,
            scan_step_km: 10.0,
            tolerance_km: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    /// Below `slant_km` the binding UE direction is on the far side of the
    /// beam center (alpha > 90 deg); above it, on the near side.
    At {
        slant_km: f64,
        far_alpha_deg: f64,
        near_alpha_deg: f64,
    },
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Near,
    Far,
}

fn binding_side(
    slant: f64,
    scenario: &ScenarioConfig,
    opts: &SolverOptions,
) -> Result<Option<(Side, f64)>> {
    let z = zero_db_separation(slant, scenario, opts)?;
    Ok(match z {
        ZeroDbSeparation::Resolved {
            binding_alpha_deg: Some(a),
            ..
        } => Some((if a > 90.0 { Side::Far } else { Side::Near }, a)),
        _ => None,
    })
}

/// Slant range at which the binding azimuth of [`zero_db_separation`] moves
/// from the far side of the beam center to the near side.
pub fn dominant_alpha_crossover(
    scenario: &ScenarioConfig,
    opts: &CrossoverOptions,
) -> Result<Crossover> {
    if !(opts.slant_min_km < opts.slant_max_km
        && opts.scan_step_km > 0.0
        && opts.tolerance_km > 0.0)
    {
        return Err(Error::Config("invalid crossover scan".into()));
    }
    let mut slants: Vec<f64> = SweepRange {
        min: opts.slant_min_km,
        max: opts.slant_max_km,
        step: opts.scan_step_km,
    }
    .values();
    if opts.slant_max_km - slants[slants.len() - 1] > 1e-9 {
        slants.push(opts.slant_max_km);
    }
    let sides = slants
        .par_iter()
        .map(|&s| binding_side(s, scenario, &opts.solver))
        .collect::<Result<Vec<_>>>()?;

    for i in 0..sides.len() - 1 {
        let (Some((Side::Far, mut far_alpha)), Some((Side::Near, mut near_alpha))) =
            (sides[i], sides[i + 1])
        else {
            continue;
        };
        let (mut lo, mut hi) = (slants[i], slants[i + 1]);
        while hi - lo > opts.tolerance_km {
            let mid = 0.5 * (lo + hi);
            match binding_side(mid, scenario, &opts.solver)? {
                Some((Side::Far, a)) => {
                    lo = mid;
                    far_alpha = a;
                }
                Some((Side::Near, a)) => {
                    hi = mid;
                    near_alpha = a;
                }
                None => break,
            }
        }
        return Ok(Crossover::At {
            slant_km: 0.5 * (lo + hi),
            far_alpha_deg: far_alpha,
            near_alpha_deg: near_alpha,
        });
    }
    Ok(Crossover::None)
}
