//! Sky temperature: the fictitious radiant temperature of the long-wave
//! sink above the building.
//!
//! Variants range from the trivial (sky = outdoor air, acceptable in
//! humid climates, poor on clear nights) to dew-point-based clear-sky
//! emissivity with a cloud-cover correction.

use crate::consts;
use crate::scalar::Scalar;
use crate::weather::{MissingField, WeatherRecord};

/// Sky temperature model variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkyModel {
    /// Sky radiates at the outdoor dry-bulb temperature.
    AirTemperature,
    /// Swinbank (1963): T_sky = 0.0552·T_air^1.5, temperatures in Kelvin.
    Swinbank,
    /// Clear-sky emissivity from the dew point (Berdahl-Martin affine
    /// form): eps = 0.741 + 0.0062·T_dp[°C]; T_sky = eps^0.25·T_air.
    DewPoint,
    /// Dew-point emissivity with a cloud correction:
    /// eps_eff = eps_clear + (1 − eps_clear)·cloud_cover.
    DewPointCloud,
}

/// Sky temperature in Kelvin for a weather record.
pub fn sky_temperature<S: Scalar>(
    record: &WeatherRecord<S>,
    model: SkyModel,
) -> Result<S, MissingField> {
    let t_air = record.dry_bulb_kelvin();
    match model {
        SkyModel::AirTemperature => Ok(t_air),
        SkyModel::Swinbank => Ok(S::lit(0.0552) * t_air.powf(S::lit(1.5))),
        SkyModel::DewPoint => {
            let eps = clear_sky_emissivity(record, "dew_point")?;
            Ok(eps.powf(S::lit(0.25)) * t_air)
        }
        SkyModel::DewPointCloud => {
            let eps_clear = clear_sky_emissivity(record, "dew_point_cloud")?;
            let cloud = record.cloud_cover.ok_or(MissingField {
                field: "cloud_cover",
                variant: "dew_point_cloud",
            })?;
            let cloud = cloud.clamp(S::zero(), S::one());
            let eps = eps_clear + (S::one() - eps_clear) * cloud;
            Ok(eps.powf(S::lit(0.25)) * t_air)
        }
    }
}

fn clear_sky_emissivity<S: Scalar>(
    record: &WeatherRecord<S>,
    variant: &'static str,
) -> Result<S, MissingField> {
    let dew_point = record.dew_point.ok_or(MissingField {
        field: "dew_point",
        variant,
    })?;
    Ok((S::lit(0.741) + S::lit(0.0062) * dew_point).clamp(S::lit(0.3), S::one()))
}

/// Long-wave radiative film coefficient between a surface at `t_surface`
/// and a sink at `t_sink`, both Kelvin: eps·sigma·(T_s²+T_k²)·(T_s+T_k).
pub fn radiative_coefficient<S: Scalar>(emissivity: S, t_surface: S, t_sink: S) -> S {
    let sigma = S::lit(consts::STEFAN_BOLTZMANN);
    emissivity * sigma * (t_surface * t_surface + t_sink * t_sink) * (t_surface + t_sink)
}
