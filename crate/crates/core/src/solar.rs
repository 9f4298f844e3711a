//! Solar geometry, diffuse/direct splitting and irradiance on tilted
//! surfaces.
//!
//! Geometry uses the classic declination polynomial of Cooper (1969) and
//! the Spencer equation of time; the clearness-index diffuse fraction is
//! the piecewise correlation of Erbs et al. (1982). All angles at the API
//! are degrees, all irradiances W/m².

use chrono::{Datelike, NaiveDateTime, Timelike};
use thiserror::Error;

use crate::consts;
use crate::model::Site;
use crate::scalar::Scalar;

/// Sun position seen from the site.
#[derive(Debug, Clone, Copy)]
pub struct SolarPosition<S = f64> {
    /// Elevation above the horizon, degrees in [-90, 90].
    pub altitude: S,
    /// Degrees clockwise from north.
    pub azimuth: S,
    /// Solar declination, degrees.
    pub declination: S,
    /// Hour angle, degrees (0 at solar noon, afternoon positive).
    pub hour_angle: S,
}

impl<S: Scalar> SolarPosition<S> {
    pub fn sin_altitude(&self) -> S {
        self.altitude.to_radians().sin()
    }

    pub fn above_horizon(&self) -> bool {
        self.altitude > S::zero()
    }
}

/// Irradiance components on a tilted surface, all ≥ 0, W/m².
#[derive(Debug, Clone, Copy, Default)]
pub struct SurfaceIrradiance<S = f64> {
    pub direct: S,
    pub diffuse_sky: S,
    pub reflected_ground: S,
}

impl<S: Scalar> SurfaceIrradiance<S> {
    pub fn total(&self) -> S {
        self.direct + self.diffuse_sky + self.reflected_ground
    }
}

/// How the diffuse fraction of global horizontal irradiance is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffuseModel {
    /// Use the measured diffuse column; error when absent.
    Measured,
    /// Estimate the diffuse fraction from the clearness index.
    ClearnessIndex,
    /// Measured when present, clearness-index estimate otherwise.
    Auto,
}

/// The measured-diffuse variant was selected but the record has no
/// diffuse observation.
#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
#[error("measured diffuse irradiance requested but the weather record has none")]
pub struct MissingDiffuse;

/// Declination in degrees for a day of year (Cooper 1969).
pub fn declination<S: Scalar>(day_of_year: u32) -> S {
    let n = S::lit(day_of_year as f64);
    S::lit(23.45) * (S::lit(360.0) * (S::lit(284.0) + n) / S::lit(365.0)).to_radians().sin()
}

/// Equation of time in minutes (Spencer 1971).
pub fn equation_of_time<S: Scalar>(day_of_year: u32) -> S {
    let b = S::lit(360.0 / 365.0) * S::lit((day_of_year as f64) - 1.0);
    let b = b.to_radians();
    S::lit(229.18)
        * (S::lit(0.000075) + S::lit(0.001868) * b.cos()
            - S::lit(0.032077) * b.sin()
            - S::lit(0.014615) * (b + b).cos()
            - S::lit(0.04089) * (b + b).sin())
}

/// Sun position from latitude, declination and hour angle (all degrees).
pub fn position_from_angles<S: Scalar>(
    latitude: S,
    declination_deg: S,
    hour_angle_deg: S,
) -> SolarPosition<S> {
    let phi = latitude.to_radians();
    let delta = declination_deg.to_radians();
    let omega = hour_angle_deg.to_radians();
    let sin_alt = phi.sin() * delta.sin() + phi.cos() * delta.cos() * omega.cos();
    let sin_alt = sin_alt.clamp(-S::one(), S::one());
    let altitude = sin_alt.asin();
    // Sun vector in local east/north coordinates; compass azimuth is
    // atan2(east, north).
    let east = -(delta.cos() * omega.sin());
    let north = phi.cos() * delta.sin() - phi.sin() * delta.cos() * omega.cos();
    let azimuth = if east.abs() + north.abs() < S::lit(1e-12) {
        S::zero()
    } else {
        let az = east.atan2(north).to_degrees();
        ((az % S::lit(360.0)) + S::lit(360.0)) % S::lit(360.0)
    };
    SolarPosition {
        altitude: altitude.to_degrees(),
        azimuth,
        declination: declination_deg,
        hour_angle: hour_angle_deg,
    }
}

/// Sun position for a site at a local-clock instant.
pub fn solar_position<S: Scalar>(site: &Site<S>, timestamp: NaiveDateTime) -> SolarPosition<S> {
    let day = timestamp.ordinal();
    let decl = declination::<S>(day);
    let clock_hours = S::lit(
        timestamp.hour() as f64
            + timestamp.minute() as f64 / 60.0
            + timestamp.second() as f64 / 3600.0,
    );
    // Longitude correction against the standard meridian of the clock's
    // time zone, plus the equation of time.
    let standard_meridian = S::lit(15.0) * site.time_zone_offset;
    let solar_hours = clock_hours
        + (site.longitude - standard_meridian) / S::lit(15.0)
        + equation_of_time::<S>(day) / S::lit(60.0);
    let hour_angle = S::lit(15.0) * (solar_hours - S::lit(12.0));
    position_from_angles(site.latitude, decl, hour_angle)
}

/// Extraterrestrial normal irradiance, W/m², with the ±3.3% annual
/// eccentricity correction.
pub fn extraterrestrial_normal<S: Scalar>(day_of_year: u32) -> S {
    let n = S::lit(day_of_year as f64);
    S::lit(consts::SOLAR_CONSTANT)
        * (S::one() + S::lit(0.033) * (S::lit(360.0) * n / S::lit(365.0)).to_radians().cos())
}

/// Diffuse fraction of global irradiance from the clearness index
/// (Erbs et al. 1982, breakpoints at kT = 0.22 and 0.80).
pub fn diffuse_fraction_erbs<S: Scalar>(kt: S) -> S {
    let kt = kt.clamp(S::zero(), S::lit(1.2));
    if kt <= S::lit(0.22) {
        S::one() - S::lit(0.09) * kt
    } else if kt <= S::lit(0.80) {
        let kt2 = kt * kt;
        S::lit(0.9511) - S::lit(0.1604) * kt + S::lit(4.388) * kt2
            - S::lit(16.638) * kt2 * kt
            + S::lit(12.336) * kt2 * kt2
    } else {
        S::lit(0.165)
    }
}

/// Splits measured global horizontal irradiance into direct normal and
/// diffuse horizontal components.
///
/// At or below the horizon both outputs are zero, except that a measured
/// diffuse observation passes through. Direct normal is clamped to
/// [0, extraterrestrial normal].
pub fn split_diffuse<S: Scalar>(
    global_horizontal: S,
    measured_diffuse: Option<S>,
    pos: &SolarPosition<S>,
    day_of_year: u32,
    model: DiffuseModel,
) -> Result<(S, S), MissingDiffuse> {
    let use_measured = match model {
        DiffuseModel::Measured => {
            if measured_diffuse.is_none() {
                return Err(MissingDiffuse);
            }
            true
        }
        DiffuseModel::ClearnessIndex => false,
        DiffuseModel::Auto => measured_diffuse.is_some(),
    };

    let sin_alt = pos.sin_altitude();
    if !pos.above_horizon() || global_horizontal <= S::zero() {
        let diffuse = if use_measured {
            measured_diffuse.unwrap_or(S::zero()).max(S::zero())
        } else {
            S::zero()
        };
        return Ok((S::zero(), diffuse));
    }

    let diffuse = if use_measured {
        measured_diffuse.unwrap().clamp(S::zero(), global_horizontal)
    } else {
        let extraterrestrial_h = extraterrestrial_normal::<S>(day_of_year) * sin_alt;
        let kt = if extraterrestrial_h > S::zero() {
            global_horizontal / extraterrestrial_h
        } else {
            S::one()
        };
        diffuse_fraction_erbs(kt) * global_horizontal
    };

    let direct_normal = ((global_horizontal - diffuse) / sin_alt)
        .max(S::zero())
        .min(extraterrestrial_normal::<S>(day_of_year));
    Ok((direct_normal, diffuse))
}

/// Irradiance on a tilted surface: direct by incidence angle, isotropic
/// sky diffuse, and isotropic ground reflection.
///
/// `tilt` is degrees from horizontal (90 = vertical facade), `azimuth`
/// degrees clockwise from north.
pub fn surface_irradiance<S: Scalar>(
    direct_normal: S,
    diffuse_horizontal: S,
    global_horizontal: S,
    pos: &SolarPosition<S>,
    tilt: S,
    azimuth: S,
    albedo: S,
) -> SurfaceIrradiance<S> {
    let tilt_r = tilt.to_radians();
    let cos_tilt = tilt_r.cos();
    let mut direct = S::zero();
    if pos.above_horizon() && direct_normal > S::zero() {
        let alt_r = pos.altitude.to_radians();
        let az_diff = (pos.azimuth - azimuth).to_radians();
        // Incidence cosine on a plane of given tilt and azimuth.
        let cos_incidence =
            alt_r.sin() * cos_tilt + alt_r.cos() * tilt_r.sin() * az_diff.cos();
        direct = direct_normal * cos_incidence.max(S::zero());
    }
    let half = S::lit(0.5);
    let diffuse_sky = diffuse_horizontal.max(S::zero()) * (S::one() + cos_tilt) * half;
    let reflected_ground =
        albedo * global_horizontal.max(S::zero()) * (S::one() - cos_tilt) * half;
    SurfaceIrradiance {
        direct,
        diffuse_sky,
        reflected_ground,
    }
}
