#![allow(dead_code)] // each test target uses its own subset

//! Shared test-side oracles, independent of the library's implementation
//! paths: a ray-projection shadow oracle, a brute-force bounce summation for
//! the interior solar distribution, and seeded random model generators.

use rand::Rng;
use thermbench::conduction::{Construction, Layer};
use thermbench::solar::{DeviceKind, ShadingDevice};

/// Beam-shaded fraction of a vertical window by 3-D ray sampling.
///
/// The window spans x in [0, w], z in [0, h] in the wall plane y = 0 with
/// outward normal +y. Each device becomes a rectangle in space; a window
/// point is shaded when the ray toward the sun crosses any of them. Wingwall
/// fins are modeled with unbounded vertical span, which is the geometry the
/// band model represents.
pub fn shaded_fraction_oracle(
    width: f64,
    height: f64,
    devices: &[ShadingDevice],
    altitude_deg: f64,
    relative_azimuth_deg: f64,
    grid: usize,
) -> f64 {
    if altitude_deg <= 0.0 || relative_azimuth_deg.abs() >= 90.0 {
        return 0.0;
    }
    let alt = altitude_deg.to_radians();
    let az = relative_azimuth_deg.to_radians();
    // Unit vector from the window toward the sun.
    let dir = (az.sin() * alt.cos(), az.cos() * alt.cos(), alt.sin());

    let mut shaded = 0usize;
    for i in 0..grid {
        for j in 0..grid {
            let px = (i as f64 + 0.5) / grid as f64 * width;
            let pz = (j as f64 + 0.5) / grid as f64 * height;
            let hit = devices.iter().any(|d| match d.kind {
                DeviceKind::Overhang => {
                    // Horizontal plane z = h + gap, y in [0, depth],
                    // x in [-ext, w + ext].
                    if dir.2 <= 0.0 {
                        return false;
                    }
                    let t = (height + d.gap - pz) / dir.2;
                    if t <= 0.0 {
                        return false;
                    }
                    let x = px + t * dir.0;
                    let y = t * dir.1;
                    let ext = d.extension.unwrap_or(f64::INFINITY);
                    y >= 0.0 && y <= d.depth && x >= -ext && x <= width + ext
                }
                DeviceKind::Wingwall => {
                    // Vertical fin planes x = -gap and x = w + gap,
                    // y in [0, depth], all z.
                    let mut blocked = false;
                    if dir.0 < 0.0 {
                        let t = (-d.gap - px) / dir.0;
                        let y = t * dir.1;
                        blocked |= t > 0.0 && y >= 0.0 && y <= d.depth;
                    }
                    if dir.0 > 0.0 {
                        let t = (width + d.gap - px) / dir.0;
                        let y = t * dir.1;
                        blocked |= t > 0.0 && y >= 0.0 && y <= d.depth;
                    }
                    blocked
                }
            });
            if hit {
                shaded += 1;
            }
        }
    }
    shaded as f64 / (grid * grid) as f64
}

/// Explicit multi-bounce summation of the interior solar exchange over
/// area-weighted view factors, built directly from the surface list.
///
/// Returns (absorbed per surface, lost out of the zone).
pub fn bounce_distribution_oracle(
    injected: f64,
    surfaces: &[(f64, f64, f64)], // (area, absorptance, back-loss)
    initial_weights: &[f64],
    bounces: usize,
) -> (Vec<f64>, f64) {
    let n = surfaces.len();
    let total_area: f64 = surfaces.iter().map(|s| s.0).sum();
    let mut incident: Vec<f64> = initial_weights.iter().map(|w| w * injected).collect();
    let mut absorbed = vec![0.0; n];
    let mut lost = 0.0;

    for _ in 0..bounces {
        let mut reflected_pool = 0.0;
        for i in 0..n {
            let (_, alpha, tau) = surfaces[i];
            absorbed[i] += alpha * incident[i];
            lost += tau * incident[i];
            reflected_pool += (1.0 - alpha - tau) * incident[i];
        }
        for i in 0..n {
            incident[i] = reflected_pool * surfaces[i].0 / total_area;
        }
    }
    (absorbed, lost)
}

/// A random physically plausible multi-layer construction.
pub fn random_construction<R: Rng>(rng: &mut R) -> Construction {
    let n_layers = rng.gen_range(1..=4);
    let layers = (0..n_layers)
        .map(|_| {
            let massless = rng.gen_bool(0.2);
            Layer {
                thickness: rng.gen_range(0.005..0.3),
                conductivity: rng.gen_range(0.03..2.0),
                density: if massless {
                    0.0
                } else {
                    rng.gen_range(10.0..2400.0)
                },
                specific_heat: if massless {
                    0.0
                } else {
                    rng.gen_range(700.0..1500.0)
                },
            }
        })
        .collect();
    Construction {
        layers,
        exterior_solar_absorptance: rng.gen_range(0.0..=1.0),
        interior_solar_absorptance: rng.gen_range(0.0..=1.0),
    }
}
