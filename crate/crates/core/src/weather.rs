//! Weather records and psychrometric helpers.

use chrono::NaiveDateTime;
use thiserror::Error;

use crate::consts;
use crate::scalar::Scalar;

/// One weather observation. Temperatures in °C, irradiances in W/m² on
/// the horizontal, humidity as a ratio (kg water / kg dry air).
#[derive(Debug, Clone)]
pub struct WeatherRecord<S = f64> {
    pub timestamp: NaiveDateTime,
    pub dry_bulb: S,
    pub humidity_ratio: S,
    pub wind_speed: S,
    /// Direction the wind blows from, degrees clockwise from north.
    pub wind_direction: S,
    pub global_horizontal: S,
    pub diffuse_horizontal: Option<S>,
    /// Cloud cover fraction in [0, 1].
    pub cloud_cover: Option<S>,
    pub dew_point: Option<S>,
}

impl<S: Scalar> WeatherRecord<S> {
    /// Dry-bulb in Kelvin.
    pub fn dry_bulb_kelvin(&self) -> S {
        self.dry_bulb + S::lit(consts::KELVIN_OFFSET)
    }

    /// A quiet, dark, dry record at the given temperature; handy for
    /// fixtures.
    pub fn constant(timestamp: NaiveDateTime, dry_bulb: S) -> Self {
        Self {
            timestamp,
            dry_bulb,
            humidity_ratio: S::lit(0.008),
            wind_speed: S::zero(),
            wind_direction: S::zero(),
            global_horizontal: S::zero(),
            diffuse_horizontal: Some(S::zero()),
            cloud_cover: None,
            dew_point: None,
        }
    }
}

/// A required optional field was missing for the selected model variant.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("weather record lacks {field}, required by the {variant} variant")]
pub struct MissingField {
    pub field: &'static str,
    pub variant: &'static str,
}

/// Saturation vapour pressure over liquid water, Pa (Magnus form).
pub fn saturation_pressure<S: Scalar>(t_celsius: S) -> S {
    S::lit(610.94) * ((S::lit(17.625) * t_celsius) / (t_celsius + S::lit(243.04))).exp()
}

/// Humidity ratio of saturated air at `t_celsius` and standard pressure.
pub fn saturation_humidity_ratio<S: Scalar>(t_celsius: S) -> S {
    let p_ws = saturation_pressure(t_celsius);
    let p = S::lit(consts::ATMOSPHERIC_PRESSURE);
    S::lit(0.622) * p_ws / (p - p_ws)
}

/// Converts relative humidity (percent) to a humidity ratio at standard
/// pressure.
pub fn humidity_ratio_from_relative<S: Scalar>(t_celsius: S, rh_percent: S) -> S {
    let p_v = saturation_pressure(t_celsius) * (rh_percent / S::lit(100.0)).max(S::zero());
    let p = S::lit(consts::ATMOSPHERIC_PRESSURE);
    S::lit(0.622) * p_v / (p - p_v)
}

/// Chronological weather series with linear interpolation between
/// records.
#[derive(Debug, Clone)]
pub struct WeatherSeries<S = f64> {
    records: Vec<WeatherRecord<S>>,
}

/// The series cannot supply a record for a requested instant.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WeatherGap {
    #[error("weather data missing at {0}")]
    Missing(NaiveDateTime),
    #[error("weather records are not in strictly increasing time order near {0}")]
    Unordered(NaiveDateTime),
    #[error("weather series is empty")]
    Empty,
}

impl<S: Scalar> WeatherSeries<S> {
    /// Largest spacing between consecutive records accepted as continuous
    /// coverage, seconds.
    const MAX_SPACING_S: i64 = 3 * 3600;

    pub fn new(records: Vec<WeatherRecord<S>>) -> Result<Self, WeatherGap> {
        if records.is_empty() {
            return Err(WeatherGap::Empty);
        }
        for pair in records.windows(2) {
            if pair[1].timestamp <= pair[0].timestamp {
                return Err(WeatherGap::Unordered(pair[1].timestamp));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[WeatherRecord<S>] {
        &self.records
    }

    pub fn first_timestamp(&self) -> NaiveDateTime {
        self.records[0].timestamp
    }

    pub fn last_timestamp(&self) -> NaiveDateTime {
        self.records[self.records.len() - 1].timestamp
    }

    /// Record at `t`, linearly interpolated between the bracketing
    /// observations. Irradiance is interpolated like every other field;
    /// solar geometry is recomputed exactly by the caller.
    pub fn sample(&self, t: NaiveDateTime) -> Result<WeatherRecord<S>, WeatherGap> {
        if t < self.first_timestamp() || t > self.last_timestamp() {
            return Err(WeatherGap::Missing(t));
        }
        let idx = self.records.partition_point(|r| r.timestamp <= t);
        if idx == 0 {
            return Ok(self.records[0].clone());
        }
        let before = &self.records[idx - 1];
        if before.timestamp == t || idx == self.records.len() {
            return Ok(before.clone());
        }
        let after = &self.records[idx];
        let span = (after.timestamp - before.timestamp).num_seconds();
        if span > Self::MAX_SPACING_S {
            return Err(WeatherGap::Missing(t));
        }
        let frac = S::lit((t - before.timestamp).num_seconds() as f64 / span as f64);
        let lerp = |a: S, b: S| a + (b - a) * frac;
        let lerp_opt = |a: Option<S>, b: Option<S>| match (a, b) {
            (Some(a), Some(b)) => Some(lerp(a, b)),
            _ => None,
        };
        Ok(WeatherRecord {
            timestamp: t,
            dry_bulb: lerp(before.dry_bulb, after.dry_bulb),
            humidity_ratio: lerp(before.humidity_ratio, after.humidity_ratio),
            wind_speed: lerp(before.wind_speed, after.wind_speed),
            wind_direction: lerp_angle(before.wind_direction, after.wind_direction, frac),
            global_horizontal: lerp(before.global_horizontal, after.global_horizontal),
            diffuse_horizontal: lerp_opt(before.diffuse_horizontal, after.diffuse_horizontal),
            cloud_cover: lerp_opt(before.cloud_cover, after.cloud_cover),
            dew_point: lerp_opt(before.dew_point, after.dew_point),
        })
    }
}

/// Interpolates a compass direction along the short way around.
fn lerp_angle<S: Scalar>(a: S, b: S, frac: S) -> S {
    let full = S::lit(360.0);
    let mut delta = (b - a) % full;
    if delta > S::lit(180.0) {
        delta -= full;
    } else if delta < S::lit(-180.0) {
        delta += full;
    }
    ((a + delta * frac) % full + full) % full
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn t(h: u32, m: u32) -> NaiveDateTime {
        NaiveDate::from_ymd_opt(2005, 3, 1)
            .unwrap()
            .and_hms_opt(h, m, 0)
            .unwrap()
    }

    #[test]
    fn saturation_pressure_reference_points() {
        // ~2339 Pa at 20 °C, ~610.9 Pa at 0 °C.
        assert!((saturation_pressure(0.0f64) - 610.94).abs() < 0.1);
        assert!((saturation_pressure(20.0f64) - 2339.0).abs() < 10.0);
    }

    #[test]
    fn relative_humidity_conversion() {
        // 50% RH at 25 °C is roughly 0.0099 kg/kg.
        let w = humidity_ratio_from_relative(25.0f64, 50.0);
        assert!((w - 0.0099).abs() < 0.0004, "{w}");
        assert_eq!(humidity_ratio_from_relative(25.0f64, 0.0), 0.0);
    }

    #[test]
    fn interpolation_between_records() {
        let series = WeatherSeries::new(vec![
            WeatherRecord::constant(t(0, 0), 20.0f64),
            WeatherRecord::constant(t(1, 0), 22.0),
        ])
        .unwrap();
        let mid = series.sample(t(0, 30)).unwrap();
        assert!((mid.dry_bulb - 21.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_is_a_gap() {
        let series = WeatherSeries::new(vec![WeatherRecord::constant(t(1, 0), 20.0f64)]).unwrap();
        let err = series.sample(t(0, 0)).unwrap_err();
        assert_eq!(err, WeatherGap::Missing(t(0, 0)));
    }

    #[test]
    fn oversized_spacing_is_a_gap() {
        let series = WeatherSeries::new(vec![
            WeatherRecord::constant(t(0, 0), 20.0f64),
            WeatherRecord::constant(t(8, 0), 22.0),
        ])
        .unwrap();
        assert!(series.sample(t(4, 0)).is_err());
        assert!(series.sample(t(0, 0)).is_ok());
    }

    #[test]
    fn wind_direction_wraps_the_short_way() {
        let lerped = lerp_angle(350.0f64, 10.0, 0.5);
        assert!((lerped - 0.0).abs() < 1e-9 || (lerped - 360.0).abs() < 1e-9);
    }
}
