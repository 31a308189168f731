//! Synthesize a deterministic desk-scale weather year and print monthly
//! statistics.
//!
//! Run with: `cargo run --example synth_weather [-- <out.csv>]`
//! When an output path is given, the series is written in weather-CSV form.

use thermbench::weather::{serialize_weather, synth_weather, Site, SynthParams};

fn main() {
    let site = Site {
        latitude: 40.0,
        longitude: 0.0,
        timezone_meridian: 0.0,
        ground_reflectance: 0.2,
    };
    let series = synth_weather(
        site,
        SynthParams {
            mean_temp: 10.0,
            daily_amp: 6.0,
            seasonal_amp: 12.0,
            clearness: 0.7,
            seed: 0,
        },
    )
    .expect("valid parameters");

    const DAYS_PER_MONTH: [usize; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
    println!("month  mean_T_C  min_T_C  max_T_C  ghi_kWh/m2");
    let mut hour = 0;
    for (m, &days) in DAYS_PER_MONTH.iter().enumerate() {
        let records = &series.records[hour..hour + days * 24];
        hour += days * 24;
        let mean = records.iter().map(|r| r.dry_bulb).sum::<f64>() / records.len() as f64;
        let min = records
            .iter()
            .map(|r| r.dry_bulb)
            .fold(f64::INFINITY, f64::min);
        let max = records
            .iter()
            .map(|r| r.dry_bulb)
            .fold(f64::NEG_INFINITY, f64::max);
        // Global horizontal from the stored beam/diffuse split.
        let ghi_kwh: f64 = records
            .iter()
            .map(|r| {
                let sun = thermbench::solar::sun_position(&site, r.hour_index);
                let sin_alt = sun.altitude.to_radians().sin().max(0.0);
                (r.direct_normal * sin_alt + r.diffuse_horizontal) / 1000.0
            })
            .sum();
        println!(
            "{:>5}  {:>8.2}  {:>7.2}  {:>7.2}  {:>10.1}",
            m + 1,
            mean,
            min,
            max,
            ghi_kwh
        );
    }

    let annual_mean =
        series.records.iter().map(|r| r.dry_bulb).sum::<f64>() / series.records.len() as f64;
    println!(
        "annual mean: {:.6} C over {} hours",
        annual_mean,
        series.len()
    );

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, serialize_weather(&series)).expect("write weather file");
        println!("wrote {}", path);
    }
}
