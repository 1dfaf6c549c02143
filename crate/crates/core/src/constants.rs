//! Physical constants shared by the models.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Standard gravitational parameter of the Earth, m^3/s^2.
pub const EARTH_GM: f64 = 3.986_004_418e14;

/// Mean Earth radius used by the scenario, km.
pub const EARTH_RADIUS_KM: f64 = 6378.0;

/// dBW to dBm offset.
pub const DBW_TO_DBM: f64 = 30.0;
