//! Co-channel interference from a LEO satellite downlink into terrestrial
//! S-band user equipment.
//!
//! The crate solves the spherical-Earth geometry between a satellite beam and
//! an off-cell UE, evaluates the satellite antenna pattern and the downlink
//! path loss, composes the per-PRB link budget into an interference-to-noise
//! ratio (INR), generates two-state land-mobile-satellite fading, and sweeps
//! the whole chain to find the separation distance beyond which INR stays
//! below 0 dB.

pub mod antenna;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod link_budget;
pub mod lms_channel;
pub mod propagation;
pub mod scenario;
pub mod seed;
pub mod sweep;

pub use antenna::{
    bessel_j1, eirp_toward, normalized_gain_db, AperturePattern, SatelliteRadioConfig,
};
pub use error::{Error, Result};
pub use geometry::{
    central_angle_from_slant_range, check_itu_validity, max_separation_for_min_elevation,
    solve_geometry, EarthModel, GeometrySolution, ItuCondition, ItuValidityReport,
    SatelliteGeometryConfig, UePlacement,
};
pub use link_budget::{
    evaluate_link, inr_db, link_at, noise_power_dbm, rx_power_dbm, LinkBudgetBreakdown,
    ReceiverConfig,
};
pub use propagation::{
    fspl_db, gaseous_attenuation_db, scintillation_db, total_path_loss, PathLossBreakdown,
    PropagationConfig,
};
pub use scenario::ScenarioConfig;
pub use sweep::{
    dominant_alpha_crossover, run_sweep, separation_profile, worst_case_inr_db, zero_db_separation,
    Aggregation, ChannelMode, Crossover, CrossoverOptions, MonteCarloSpec, SolverOptions,
    SweepRange, SweepResult, SweepRow, SweepSpec, SweepVariable, ZeroDbSeparation,
};
