//! Sweep sun positions past an overhang and a wingwall pair and print the
//! shaded fraction of a 3 m x 2 m window.
//!
//! Run with: `cargo run --example shading_sweep`

use thermbench::solar::{
    shaded_fraction, DeviceKind, ShadingDevice, SunPosition, SurfaceGeometry, WindowRect,
};

fn main() {
    let window = WindowRect {
        width: 3.0,
        height: 2.0,
    };
    let south_wall = SurfaceGeometry {
        area: 6.0,
        azimuth: 180.0,
        tilt: 90.0,
    };

    let overhang = ShadingDevice {
        kind: DeviceKind::Overhang,
        depth: 1.0,
        gap: 0.0,
        extension: None,
        diffuse_block: 0.0,
    };
    println!("overhang, sun due south, altitude sweep:");
    println!("altitude_deg  shaded_fraction");
    for altitude in (0..=80).step_by(10) {
        let sun = SunPosition {
            altitude: altitude as f64,
            azimuth: 180.0,
        };
        let f = shaded_fraction(&window, &south_wall, &[overhang], &sun);
        println!("{:>12}  {:>15.3}", altitude, f);
    }

    let wingwall = ShadingDevice {
        kind: DeviceKind::Wingwall,
        depth: 1.0,
        gap: 0.0,
        extension: None,
        diffuse_block: 0.0,
    };
    println!();
    println!("wingwall pair, low sun, azimuth sweep:");
    println!("sun_azimuth_deg  shaded_fraction");
    for azimuth in (120..=240).step_by(15) {
        let sun = SunPosition {
            altitude: 10.0,
            azimuth: azimuth as f64,
        };
        let f = shaded_fraction(&window, &south_wall, &[wingwall], &sun);
        println!("{:>15}  {:>15.3}", azimuth, f);
    }

    println!();
    println!("both devices together, afternoon path:");
    println!("azimuth_deg  altitude_deg  shaded_fraction");
    for step in 0..=6 {
        let azimuth = 180.0 + 15.0 * step as f64;
        let altitude = 60.0 - 8.0 * step as f64;
        let sun = SunPosition { altitude, azimuth };
        let f = shaded_fraction(&window, &south_wall, &[overhang, wingwall], &sun);
        println!("{:>11.0}  {:>12.0}  {:>15.3}", azimuth, altitude, f);
    }
}
