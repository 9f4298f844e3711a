//! Physical constants shared across the engine.
//!
//! Stored as `f64` and converted with [`Scalar::lit`](crate::Scalar::lit)
//! at the point of use.

/// Stefan-Boltzmann constant, W/(m²·K⁴).
pub const STEFAN_BOLTZMANN: f64 = 5.670374419e-8;

/// Gravitational acceleration, m/s².
pub const GRAVITY: f64 = 9.81;

/// Specific heat of dry air, J/(kg·K).
pub const CP_AIR: f64 = 1006.0;

/// 0 °C in Kelvin.
pub const KELVIN_OFFSET: f64 = 273.15;

/// Ideal-gas numerator for dry air at 101325 Pa: rho = 353.25 / T[K].
pub const AIR_DENSITY_NUMERATOR: f64 = 353.25;

/// Latent heat of vaporization of water, J/kg.
pub const LATENT_HEAT_VAPORIZATION: f64 = 2.45e6;

/// Solar constant, W/m².
pub const SOLAR_CONSTANT: f64 = 1367.0;

/// Standard atmospheric pressure, Pa.
pub const ATMOSPHERIC_PRESSURE: f64 = 101325.0;
