//! Hourly weather series: parsing/serialization of the weather-CSV format and
//! deterministic synthesis of desk-scale annual drives.
//!
//! The weather-CSV format is a plain UTF-8 text document:
//!
//! ```text
//! #site,<latitude>,<longitude>,<timezone_meridian>,<ground_reflectance>
//! hour,dry_bulb_C,dni_Wm2,dhi_Wm2
//! 0,10,0,0
//! 1,9.5,0,0
//! ...
//! ```
//!
//! One data row per hour, `.` decimal separator, `\n` line endings. Hour
//! indices must be strictly increasing and the record count a positive
//! multiple of 24; annual simulations require exactly 8760 records.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solar;

/// Hours in a non-leap year; annual runs require exactly this many records.
pub const HOURS_PER_YEAR: usize = 8760;

/// Geographic site a weather series belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Site {
    /// Latitude in degrees, north positive, in [-90, 90].
    pub latitude: f64,
    /// Longitude in degrees, east positive, in [-180, 180].
    pub longitude: f64,
    /// Meridian of the local timezone in degrees, east positive.
    pub timezone_meridian: f64,
    /// Ground solar reflectance (albedo) in [0, 1].
    pub ground_reflectance: f64,
}

impl Site {
    pub fn validate(&self) -> Result<(), WeatherError> {
        let ok = (-90.0..=90.0).contains(&self.latitude)
            && (-180.0..=180.0).contains(&self.longitude)
            && (-180.0..=180.0).contains(&self.timezone_meridian)
            && (0.0..=1.0).contains(&self.ground_reflectance);
        if ok {
            Ok(())
        } else {
            Err(WeatherError::MalformedHeader)
        }
    }
}

/// One hour of weather.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherRecord {
    /// Hour index from the start of the series (0-based, strictly increasing).
    pub hour_index: u32,
    /// Dry-bulb air temperature in degrees C.
    pub dry_bulb: f64,
    /// Direct normal irradiance in W/m², non-negative.
    pub direct_normal: f64,
    /// Diffuse horizontal irradiance in W/m², non-negative.
    pub diffuse_horizontal: f64,
}

/// An ordered hourly weather series tied to a site.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatherSeries {
    pub site: Site,
    pub records: Vec<WeatherRecord>,
}

#[derive(Debug, Error, PartialEq)]
pub enum WeatherError {
    #[error("malformed weather header")]
    MalformedHeader,
    #[error("line {0}: wrong number of columns")]
    BadColumnCount(usize),
    #[error("line {0}, column {1}: not a number")]
    NonNumeric(usize, usize),
    #[error("line {0}: negative irradiance")]
    NegativeIrradiance(usize),
    #[error("line {0}: hour index not strictly increasing")]
    NonMonotonicHour(usize),
    #[error("record count {0} is not a positive multiple of 24")]
    BadRecordCount(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

const COLUMN_HEADER: &str = "hour,dry_bulb_C,dni_Wm2,dhi_Wm2";

impl WeatherSeries {
    pub fn new(site: Site, records: Vec<WeatherRecord>) -> Result<Self, WeatherError> {
        site.validate()?;
        if records.is_empty() || !records.len().is_multiple_of(24) {
            return Err(WeatherError::BadRecordCount(records.len()));
        }
        let mut last: Option<u32> = None;
        for (i, r) in records.iter().enumerate() {
            if r.direct_normal < 0.0 || r.diffuse_horizontal < 0.0 {
                return Err(WeatherError::NegativeIrradiance(i + 3));
            }
            if let Some(prev) = last {
                if r.hour_index <= prev {
                    return Err(WeatherError::NonMonotonicHour(i + 3));
                }
            }
            last = Some(r.hour_index);
        }
        Ok(WeatherSeries { site, records })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Parses a weather-CSV document into a validated series.
///
/// Line numbers in errors are 1-based positions in the document (the site
/// header is line 1, the column header line 2, data starts at line 3).
pub fn parse_weather(text: &str) -> Result<WeatherSeries, WeatherError> {
    let mut lines = text.lines();

    let site_line = lines.next().ok_or(WeatherError::MalformedHeader)?;
    let rest = site_line
        .strip_prefix("#site,")
        .ok_or(WeatherError::MalformedHeader)?;
    let fields: Vec<&str> = rest.split(',').collect();
    if fields.len() != 4 {
        return Err(WeatherError::MalformedHeader);
    }
    let mut vals = [0.0f64; 4];
    for (i, f) in fields.iter().enumerate() {
        vals[i] = f
            .trim()
            .parse()
            .map_err(|_| WeatherError::MalformedHeader)?;
    }
    let site = Site {
        latitude: vals[0],
        longitude: vals[1],
        timezone_meridian: vals[2],
        ground_reflectance: vals[3],
    };
    site.validate()?;

    let header = lines.next().ok_or(WeatherError::MalformedHeader)?;
    if header.trim() != COLUMN_HEADER {
        return Err(WeatherError::MalformedHeader);
    }

    let mut records = Vec::new();
    let mut last_hour: Option<u32> = None;
    for (i, line) in lines.enumerate() {
        let line_no = i + 3;
        if line.is_empty() {
            continue; // tolerate a trailing newline
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 4 {
            return Err(WeatherError::BadColumnCount(line_no));
        }
        let hour_index: u32 = cols[0]
            .trim()
            .parse()
            .map_err(|_| WeatherError::NonNumeric(line_no, 0))?;
        let mut num = [0.0f64; 3];
        for (j, c) in cols[1..].iter().enumerate() {
            num[j] = c
                .trim()
                .parse()
                .map_err(|_| WeatherError::NonNumeric(line_no, j + 1))?;
        }
        let record = WeatherRecord {
            hour_index,
            dry_bulb: num[0],
            direct_normal: num[1],
            diffuse_horizontal: num[2],
        };
        if record.direct_normal < 0.0 || record.diffuse_horizontal < 0.0 {
            return Err(WeatherError::NegativeIrradiance(line_no));
        }
        if let Some(prev) = last_hour {
            if hour_index <= prev {
                return Err(WeatherError::NonMonotonicHour(line_no));
            }
        }
        last_hour = Some(hour_index);
        records.push(record);
    }

    if records.is_empty() || !records.len().is_multiple_of(24) {
        return Err(WeatherError::BadRecordCount(records.len()));
    }
    Ok(WeatherSeries { site, records })
}

/// Serializes a series to the canonical weather-CSV form.
///
/// Canonical means: shortest round-trip float rendering, no padding, a single
/// trailing newline. `parse_weather(serialize_weather(s))` reproduces `s`.
pub fn serialize_weather(series: &WeatherSeries) -> String {
    let mut out = String::with_capacity(series.records.len() * 24 + 64);
    let s = &series.site;
    out.push_str(&format!(
        "#site,{},{},{},{}\n",
        s.latitude, s.longitude, s.timezone_meridian, s.ground_reflectance
    ));
    out.push_str(COLUMN_HEADER);
    out.push('\n');
    for r in &series.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.hour_index, r.dry_bulb, r.direct_normal, r.diffuse_horizontal
        ));
    }
    out
}

/// Parameters for [`synth_weather`].
#[derive(Debug, Clone, Copy)]
pub struct SynthParams {
    /// Annual mean dry-bulb temperature in degrees C.
    pub mean_temp: f64,
    /// Half peak-to-trough amplitude of the daily temperature cycle in K.
    pub daily_amp: f64,
    /// Half peak-to-trough amplitude of the seasonal temperature cycle in K.
    pub seasonal_amp: f64,
    /// Clear-sky fraction in [0, 1] scaling the irradiance envelope.
    pub clearness: f64,
    /// Seed for the optional temperature perturbation; 0 disables it.
    pub seed: u64,
}

/// Synthesizes a deterministic 8760-hour weather year.
///
/// Dry-bulb is the sum of the mean, a seasonal cosine (coldest around
/// mid-January), a daily cosine (coldest around 04:00) and, when `seed` is
/// nonzero, a seeded uniform perturbation of up to ±0.5 K. Irradiance is a
/// clear-sky envelope of 1000·sin(altitude) W/m² on the horizontal, scaled by
/// `clearness` and split 80/20 into beam and diffuse; both channels are zero
/// whenever the solar altitude is at or below the horizon.
pub fn synth_weather(site: Site, params: SynthParams) -> Result<WeatherSeries, WeatherError> {
    site.validate()
        .map_err(|_| WeatherError::InvalidParameter("site out of range".into()))?;
    if params.daily_amp < 0.0 || params.seasonal_amp < 0.0 {
        return Err(WeatherError::InvalidParameter(
            "amplitudes must be non-negative".into(),
        ));
    }
    if !(0.0..=1.0).contains(&params.clearness) {
        return Err(WeatherError::InvalidParameter(
            "clearness must be in [0, 1]".into(),
        ));
    }

    let mut rng = (params.seed != 0).then(|| ChaCha8Rng::seed_from_u64(params.seed));

    let mut records = Vec::with_capacity(HOURS_PER_YEAR);
    for h in 0..HOURS_PER_YEAR {
        let day = (h / 24) as f64;
        let hour_of_day = (h % 24) as f64;

        let seasonal = -params.seasonal_amp * (std::f64::consts::TAU * (day - 15.0) / 365.0).cos();
        let daily = -params.daily_amp * (std::f64::consts::TAU * (hour_of_day - 4.0) / 24.0).cos();
        let noise = rng.as_mut().map_or(0.0, |r| r.gen_range(-0.5..=0.5));
        let dry_bulb = params.mean_temp + seasonal + daily + noise;

        let sun = solar::sun_position(&site, h as u32);
        let (dni, dhi) = if sun.altitude > 0.0 {
            let envelope = 1000.0 * sun.altitude.to_radians().sin();
            let global = params.clearness * envelope;
            // 80/20 beam/diffuse split of the horizontal envelope.
            let beam_horizontal = 0.8 * global;
            (
                beam_horizontal / sun.altitude.to_radians().sin(),
                0.2 * global,
            )
        } else {
            (0.0, 0.0)
        };

        records.push(WeatherRecord {
            hour_index: h as u32,
            dry_bulb,
            direct_normal: dni,
            diffuse_horizontal: dhi,
        });
    }

    WeatherSeries::new(site, records)
}
