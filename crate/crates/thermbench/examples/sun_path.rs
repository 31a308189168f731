//! Trace the sun across a midsummer day and show the irradiance a south
//! facade receives, hour by hour.
//!
//! Run with: `cargo run --example sun_path`

use thermbench::solar::{incidence_cosine, plane_irradiance, sun_position, SurfaceGeometry};
use thermbench::weather::{synth_weather, Site, SynthParams};

fn main() {
    let site = Site {
        latitude: 40.0,
        longitude: 0.0,
        timezone_meridian: 0.0,
        ground_reflectance: 0.2,
    };
    let weather = synth_weather(
        site,
        SynthParams {
            mean_temp: 10.0,
            daily_amp: 6.0,
            seasonal_amp: 12.0,
            clearness: 0.8,
            seed: 0,
        },
    )
    .expect("valid parameters");

    let south_wall = SurfaceGeometry {
        area: 1.0,
        azimuth: 180.0,
        tilt: 90.0,
    };

    // Day 172 is close to the summer solstice.
    let day = 172;
    println!("hour  altitude  azimuth  cos_inc  beam  sky  ground  total_Wm2");
    for hour_of_day in 0..24 {
        let hour_index = (day - 1) * 24 + hour_of_day;
        let record = &weather.records[hour_index];
        let sun = sun_position(&site, record.hour_index);
        let cos_inc = incidence_cosine(&sun, &south_wall);
        let plane = plane_irradiance(record, &sun, &south_wall, site.ground_reflectance);
        println!(
            "{:>4}  {:>8.1}  {:>7.1}  {:>7.3}  {:>4.0}  {:>3.0}  {:>6.0}  {:>9.0}",
            hour_of_day,
            sun.altitude,
            sun.azimuth,
            cos_inc,
            plane.beam,
            plane.sky_diffuse,
            plane.ground_reflected,
            plane.total()
        );
    }
}
