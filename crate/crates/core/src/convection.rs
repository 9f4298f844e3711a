//! Convective film coefficients on outdoor and indoor surfaces.

use thiserror::Error;

use crate::model::SurfaceClass;
use crate::scalar::Scalar;

/// Outdoor convective exchange model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutdoorConvectionModel<S = f64> {
    /// Fixed film coefficient, W/(m²·K).
    Constant { h: S },
    /// h = 5.8 + 4·V with V the meteorological wind speed in m/s.
    LinearWind,
    /// Ito et al. correlation: a local near-surface velocity derived
    /// from the meteorological wind on the windward/leeward side drives
    /// h = 18.63·V_loc^0.605.
    Ito,
    /// Cole & Sturrock (1977): h = 11.4 + 5.7·V windward, 5.7 leeward.
    ColeSturrock,
}

/// Wind speed cannot be negative.
#[derive(Debug, Clone, Copy, Error, PartialEq)]
#[error("wind speed must be ≥ 0 m/s (got {0})")]
pub struct NegativeWindSpeed(pub f64);

/// Is a facade windward for the given wind direction? True when the
/// facade azimuth is within 90° of the direction the wind comes from.
pub fn is_windward<S: Scalar>(surface_azimuth: S, wind_direction: S) -> bool {
    let full = S::lit(360.0);
    let diff = ((surface_azimuth - wind_direction) % full + full) % full;
    let diff = if diff > S::lit(180.0) { full - diff } else { diff };
    diff <= S::lit(90.0)
}

/// Outdoor film coefficient, W/(m²·K).
pub fn outdoor_film_coefficient<S: Scalar>(
    model: OutdoorConvectionModel<S>,
    wind_speed: S,
    surface_azimuth: S,
    wind_direction: S,
) -> Result<S, NegativeWindSpeed> {
    if wind_speed < S::zero() {
        return Err(NegativeWindSpeed(wind_speed.as_f64()));
    }
    let windward = is_windward(surface_azimuth, wind_direction);
    Ok(match model {
        OutdoorConvectionModel::Constant { h } => h,
        OutdoorConvectionModel::LinearWind => S::lit(5.8) + S::lit(4.0) * wind_speed,
        OutdoorConvectionModel::Ito => {
            let v_loc = if windward {
                if wind_speed > S::lit(2.0) {
                    S::lit(0.25) * wind_speed
                } else {
                    // Published form: constant 0.5 m/s local velocity for
                    // light windward winds, continuous at V = 2.
                    S::lit(0.5)
                }
            } else {
                S::lit(0.3) + S::lit(0.05) * wind_speed
            };
            S::lit(18.63) * v_loc.powf(S::lit(0.605))
        }
        OutdoorConvectionModel::ColeSturrock => {
            if windward {
                S::lit(11.4) + S::lit(5.7) * wind_speed
            } else {
                S::lit(5.7)
            }
        }
    })
}

/// Indoor convective exchange model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndoorConvectionModel<S = f64> {
    /// Fixed film coefficient, W/(m²·K).
    Constant { h: S },
    /// Buoyancy correlation h = a·|ΔT|^b with (a, b) per surface class,
    /// floored at `h_min`. Stratified floor/ceiling cases fall to the
    /// floor value.
    Correlation { h_min: S },
}

impl<S: Scalar> IndoorConvectionModel<S> {
    pub fn correlation_default() -> Self {
        IndoorConvectionModel::Correlation { h_min: S::lit(0.5) }
    }

    /// Does the coefficient depend on the solved temperatures?
    pub fn is_nonlinear(&self) -> bool {
        matches!(self, IndoorConvectionModel::Correlation { .. })
    }
}

/// Indoor film coefficient, W/(m²·K).
///
/// `delta_t` is the signed gap T_surface − T_air in K; its sign decides
/// whether a floor or ceiling drives buoyant mixing (warm floor, cool
/// ceiling) or sits in a stable stratification.
pub fn indoor_film_coefficient<S: Scalar>(
    model: IndoorConvectionModel<S>,
    delta_t: S,
    class: SurfaceClass,
) -> S {
    match model {
        IndoorConvectionModel::Constant { h } => h,
        IndoorConvectionModel::Correlation { h_min } => {
            let gap = delta_t.abs();
            let (a, b) = match class {
                SurfaceClass::Floor => {
                    if delta_t > S::zero() {
                        (S::lit(1.31), S::lit(0.25))
                    } else {
                        return h_min; // cool floor: stratified
                    }
                }
                SurfaceClass::Ceiling => {
                    if delta_t < S::zero() {
                        (S::lit(1.31), S::lit(0.25))
                    } else {
                        return h_min; // warm ceiling: stratified
                    }
                }
                SurfaceClass::VerticalWall
                | SurfaceClass::Window
                | SurfaceClass::InteriorSeparation => (S::lit(1.52), S::lit(0.33)),
            };
            (a * gap.powf(b)).max(h_min)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_value_passes_through() {
        let h =
            outdoor_film_coefficient(OutdoorConvectionModel::Constant { h: 11.7f64 }, 3.0, 0.0, 0.0)
                .unwrap();
        assert_eq!(h, 11.7);
    }

    #[test]
    fn linear_wind_values() {
        let m = OutdoorConvectionModel::<f64>::LinearWind;
        assert_eq!(outdoor_film_coefficient(m, 0.0, 0.0, 0.0).unwrap(), 5.8);
        assert_eq!(outdoor_film_coefficient(m, 1.0, 0.0, 0.0).unwrap(), 9.8);
    }

    #[test]
    fn linear_wind_is_affine() {
        let m = OutdoorConvectionModel::<f64>::LinearWind;
        let h0 = outdoor_film_coefficient(m, 2.0, 0.0, 0.0).unwrap();
        let h1 = outdoor_film_coefficient(m, 6.0, 0.0, 0.0).unwrap();
        let interpolated = h0 + (h1 - h0) * 0.25;
        let direct = outdoor_film_coefficient(m, 3.0, 0.0, 0.0).unwrap();
        assert!((interpolated - direct).abs() < 1e-12);
    }

    #[test]
    fn ito_windward_exceeds_leeward() {
        let m = OutdoorConvectionModel::<f64>::Ito;
        let windward = outdoor_film_coefficient(m, 3.0, 180.0, 180.0).unwrap();
        let leeward = outdoor_film_coefficient(m, 3.0, 0.0, 180.0).unwrap();
        assert!(windward > leeward, "{windward} vs {leeward}");
    }

    #[test]
    fn cole_sturrock_sides() {
        let m = OutdoorConvectionModel::<f64>::ColeSturrock;
        assert_eq!(outdoor_film_coefficient(m, 2.0, 90.0, 90.0).unwrap(), 22.8);
        assert_eq!(outdoor_film_coefficient(m, 2.0, 270.0, 90.0).unwrap(), 5.7);
    }

    #[test]
    fn negative_wind_speed_rejected() {
        let err = outdoor_film_coefficient(
            OutdoorConvectionModel::<f64>::LinearWind,
            -1.0,
            0.0,
            0.0,
        )
        .unwrap_err();
        assert_eq!(err.0, -1.0);
    }

    #[test]
    fn windward_wraps_across_north() {
        assert!(is_windward(350.0f64, 10.0));
        assert!(!is_windward(180.0f64, 10.0));
    }

    #[test]
    fn indoor_constant() {
        let h = indoor_film_coefficient(
            IndoorConvectionModel::Constant { h: 3.0f64 },
            12.0,
            SurfaceClass::Floor,
        );
        assert_eq!(h, 3.0);
    }

    #[test]
    fn indoor_correlation_vertical_wall() {
        let h = indoor_film_coefficient(
            IndoorConvectionModel::correlation_default(),
            8.0f64,
            SurfaceClass::VerticalWall,
        );
        assert!((h - 3.02).abs() < 0.01, "{h}");
    }

    #[test]
    fn zero_gap_hits_floor_value() {
        let h = indoor_film_coefficient(
            IndoorConvectionModel::correlation_default(),
            0.0f64,
            SurfaceClass::VerticalWall,
        );
        assert_eq!(h, 0.5);
    }

    #[test]
    fn stratified_cases_fall_to_floor_value() {
        let model = IndoorConvectionModel::correlation_default();
        // Cool floor and warm ceiling are stable.
        assert_eq!(indoor_film_coefficient(model, -5.0f64, SurfaceClass::Floor), 0.5);
        assert_eq!(indoor_film_coefficient(model, 5.0f64, SurfaceClass::Ceiling), 0.5);
        // Warm floor and cool ceiling mix.
        assert!(indoor_film_coefficient(model, 5.0f64, SurfaceClass::Floor) > 1.0);
        assert!(indoor_film_coefficient(model, -5.0f64, SurfaceClass::Ceiling) > 1.0);
    }
}
