//! Sun position, irradiance on tilted surfaces, beam shading by overhangs and
//! wingwalls, and solar transmission through glazing.
//!
//! Angle conventions: azimuth in degrees clockwise from north, tilt in degrees
//! from horizontal (0 = facing up, 90 = vertical). Hour indices resolve to the
//! hour's midpoint; by default the hour index is taken as solar time directly,
//! with an equation-of-time + longitude correction available as a variant.
//! The sky diffuse model is isotropic.

use serde::{Deserialize, Serialize};

use crate::weather::{Site, WeatherRecord};

/// Sun position in the local sky.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SunPosition {
    /// Altitude above the horizon in degrees, in [-90, 90].
    pub altitude: f64,
    /// Azimuth in degrees clockwise from north, in [0, 360).
    pub azimuth: f64,
}

impl SunPosition {
    pub fn is_up(&self) -> bool {
        self.altitude > 0.0
    }
}

/// Orientation and size of a flat surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGeometry {
    /// Surface area in m², > 0.
    pub area: f64,
    /// Azimuth of the outward normal in degrees clockwise from north.
    pub azimuth: f64,
    /// Tilt in degrees: 0 horizontal facing up, 90 vertical, 180 facing down.
    pub tilt: f64,
}

/// Width and height of a rectangular window, used for shading projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowRect {
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceKind {
    /// Horizontal projection above the window.
    Overhang,
    /// Vertical fins at both side edges of the window.
    Wingwall,
}

/// A fixed external shading device attached to a window.
///
/// Shading is beam-only by default: the device removes direct radiation by
/// geometric projection but leaves diffuse radiation untouched unless
/// `diffuse_block` is set, which removes that constant fraction of the
/// diffuse components whenever the device is present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadingDevice {
    pub kind: DeviceKind,
    /// Projection depth from the wall plane in m.
    pub depth: f64,
    /// Distance from the window edge to the device plane in m (above the top
    /// edge for overhangs, beside the lateral edges for wingwalls).
    #[serde(default)]
    pub gap: f64,
    /// Overrun beyond the window edges in m; `None` means unbounded.
    #[serde(default)]
    pub extension: Option<f64>,
    /// Constant fraction of diffuse radiation blocked by this device, [0, 1].
    #[serde(default)]
    pub diffuse_block: f64,
}

/// Optical and thermal properties of a glazing unit.
///
/// The whole-window U-value is air-to-air: surface films are folded in and the
/// unit appears in the zone balance as a massless conductance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Glazing {
    /// Glazed area in m², > 0.
    pub area: f64,
    /// Beam transmittance at normal incidence, [0, 1].
    pub normal_transmittance: f64,
    /// Polynomial coefficients in cos(incidence), constant term first. The
    /// curve is normalized so the polynomial at cos = 1 maps to
    /// `normal_transmittance`; empty means angle-independent.
    #[serde(default = "default_angular_coefficients")]
    pub angular_coefficients: Vec<f64>,
    /// Hemispherical diffuse transmittance, [0, 1].
    pub diffuse_transmittance: f64,
    /// Whole-window thermal transmittance in W/m²K, > 0.
    pub u_value: f64,
}

/// Default angular curve: 1.5c - 0.5c³, monotone on [0, 1] with value 1 at
/// normal incidence and 0 at grazing.
fn default_angular_coefficients() -> Vec<f64> {
    vec![0.0, 1.5, 0.0, -0.5]
}

impl Glazing {
    /// Beam transmittance at the given incidence cosine, clamped to [0, 1].
    pub fn beam_transmittance(&self, incidence_cos: f64) -> f64 {
        let c = incidence_cos.clamp(0.0, 1.0);
        if self.angular_coefficients.is_empty() {
            return self.normal_transmittance.clamp(0.0, 1.0);
        }
        let eval = |x: f64| {
            self.angular_coefficients
                .iter()
                .rev()
                .fold(0.0, |acc, k| acc * x + k)
        };
        let at_normal = eval(1.0);
        let ratio = if at_normal != 0.0 {
            eval(c) / at_normal
        } else {
            1.0
        };
        (self.normal_transmittance * ratio).clamp(0.0, 1.0)
    }

    /// Diffuse transmittance matching the default angular curve evaluated at
    /// 60 degrees incidence.
    pub fn diffuse_from_angular(normal_transmittance: f64) -> f64 {
        let g = Glazing {
            area: 1.0,
            normal_transmittance,
            angular_coefficients: default_angular_coefficients(),
            diffuse_transmittance: 0.0,
            u_value: 1.0,
        };
        g.beam_transmittance(60f64.to_radians().cos())
    }
}

/// Beam, sky-diffuse and ground-reflected irradiance on a tilted plane, W/m².
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlaneIrradiance {
    pub beam: f64,
    pub sky_diffuse: f64,
    pub ground_reflected: f64,
}

impl PlaneIrradiance {
    pub fn total(&self) -> f64 {
        self.beam + self.sky_diffuse + self.ground_reflected
    }
}

/// Sun position for the given hour's midpoint, taking the hour index as solar
/// time directly (no equation-of-time or longitude correction).
pub fn sun_position(site: &Site, hour_index: u32) -> SunPosition {
    let day = day_of_year(hour_index);
    let solar_hour = (hour_index % 24) as f64 + 0.5;
    sun_position_at(site, day, solar_hour)
}

/// Sun position for the given hour's midpoint with the equation-of-time and
/// site longitude correction applied (hour index read as local clock time).
pub fn sun_position_corrected(site: &Site, hour_index: u32) -> SunPosition {
    let day = day_of_year(hour_index);
    let clock_hour = (hour_index % 24) as f64 + 0.5;
    let solar_hour = clock_hour
        + equation_of_time_minutes(day) / 60.0
        + (site.longitude - site.timezone_meridian) / 15.0;
    sun_position_at(site, day, solar_hour)
}

/// Sun position at an explicit day of year (1-based) and solar hour.
pub fn sun_position_at(site: &Site, day_of_year: u32, solar_hour: f64) -> SunPosition {
    let lat = site.latitude.to_radians();
    let decl = declination_deg(day_of_year).to_radians();
    let hour_angle = (15.0 * (solar_hour - 12.0)).to_radians();

    let sin_alt = lat.sin() * decl.sin() + lat.cos() * decl.cos() * hour_angle.cos();
    let altitude = sin_alt.clamp(-1.0, 1.0).asin().to_degrees();

    let east = -decl.cos() * hour_angle.sin();
    let north = decl.sin() * lat.cos() - decl.cos() * lat.sin() * hour_angle.cos();
    let azimuth = east.atan2(north).to_degrees().rem_euclid(360.0);

    SunPosition { altitude, azimuth }
}

fn day_of_year(hour_index: u32) -> u32 {
    (hour_index / 24) % 365 + 1
}

/// Solar declination in degrees (Cooper's formula).
fn declination_deg(day_of_year: u32) -> f64 {
    23.45 * (std::f64::consts::TAU * (284.0 + day_of_year as f64) / 365.0).sin()
}

/// Equation of time in minutes (Spencer's Fourier fit).
fn equation_of_time_minutes(day_of_year: u32) -> f64 {
    let g = std::f64::consts::TAU * (day_of_year as f64 - 1.0) / 365.0;
    229.18
        * (0.000075 + 0.001868 * g.cos()
            - 0.032077 * g.sin()
            - 0.014615 * (2.0 * g).cos()
            - 0.040849 * (2.0 * g).sin())
}

/// Cosine of the beam incidence angle on a surface, clamped at 0 when the sun
/// is behind the surface or below the horizon.
pub fn incidence_cosine(sun: &SunPosition, surface: &SurfaceGeometry) -> f64 {
    if sun.altitude <= 0.0 {
        return 0.0;
    }
    let alt = sun.altitude.to_radians();
    let tilt = surface.tilt.to_radians();
    let rel_az = (sun.azimuth - surface.azimuth).to_radians();
    let cos_theta = alt.sin() * tilt.cos() + alt.cos() * tilt.sin() * rel_az.cos();
    cos_theta.max(0.0)
}

/// Irradiance components on a tilted plane from one weather record.
///
/// Isotropic sky: sky diffuse scales by (1 + cos tilt)/2 and ground-reflected
/// by ρ(1 - cos tilt)/2 of the global horizontal.
pub fn plane_irradiance(
    record: &WeatherRecord,
    sun: &SunPosition,
    surface: &SurfaceGeometry,
    ground_reflectance: f64,
) -> PlaneIrradiance {
    let cos_tilt = surface.tilt.to_radians().cos();
    let beam = record.direct_normal * incidence_cosine(sun, surface);
    let sky_diffuse = record.diffuse_horizontal * 0.5 * (1.0 + cos_tilt);
    let sin_alt = sun.altitude.to_radians().sin().max(0.0);
    let global_horizontal = record.direct_normal * sin_alt + record.diffuse_horizontal;
    let ground_reflected = global_horizontal * ground_reflectance * 0.5 * (1.0 - cos_tilt);
    PlaneIrradiance {
        beam,
        sky_diffuse,
        ground_reflected,
    }
}

/// Fraction of a vertical rectangular window shadowed from beam radiation by
/// the given devices, in [0, 1].
///
/// Each device projects a shadow rectangle onto the window plane: an overhang
/// casts a band below itself of depth `depth·tan(profile angle)` shifted
/// laterally by `depth·tan(relative azimuth)`, a wingwall pair casts a
/// full-height band of width `depth·tan(relative azimuth)` from the sunward
/// edge. Rectangles are clipped to the window and combined by area union.
/// Degenerate geometry (sun down, sun behind the wall, zero-size window)
/// yields 0.
pub fn shaded_fraction(
    window: &WindowRect,
    surface: &SurfaceGeometry,
    devices: &[ShadingDevice],
    sun: &SunPosition,
) -> f64 {
    let (w, h) = (window.width, window.height);
    if w <= 0.0 || h <= 0.0 || sun.altitude <= 0.0 || devices.is_empty() {
        return 0.0;
    }
    let mut rel_az = (sun.azimuth - surface.azimuth).rem_euclid(360.0);
    if rel_az > 180.0 {
        rel_az -= 360.0;
    }
    if rel_az.abs() >= 90.0 {
        return 0.0; // sun behind the wall: no beam to shade
    }

    let tan_az = rel_az.abs().to_radians().tan();
    // Profile angle: solar altitude projected onto the wall-normal plane.
    let tan_profile = sun.altitude.to_radians().tan() / rel_az.to_radians().cos();

    // Window coordinates: x in [0, w] with the sun toward +x, y in [0, h]
    // upward. The lateral mirroring is exact because both device kinds are
    // symmetric about the window's vertical centerline.
    let mut shadows: Vec<[f64; 4]> = Vec::new(); // [x0, x1, y0, y1]
    for d in devices {
        if d.depth <= 0.0 {
            continue;
        }
        match d.kind {
            DeviceKind::Overhang => {
                let drop = d.depth * tan_profile - d.gap;
                if drop <= 0.0 {
                    continue;
                }
                let shift = d.depth * tan_az; // shadow moves away from the sun
                let (x0, x1) = match d.extension {
                    Some(ext) => ((-ext - shift).max(0.0), (w + ext - shift).min(w)),
                    None => (0.0, w),
                };
                let y0 = (h - drop).max(0.0);
                if x1 > x0 && h > y0 {
                    shadows.push([x0, x1, y0, h]);
                }
            }
            DeviceKind::Wingwall => {
                let width = d.depth * tan_az - d.gap;
                if width <= 0.0 {
                    continue;
                }
                let x0 = (w - width).max(0.0);
                shadows.push([x0, w, 0.0, h]);
            }
        }
    }
    if shadows.is_empty() {
        return 0.0;
    }

    (rect_union_area(&shadows) / (w * h)).clamp(0.0, 1.0)
}

/// Area of the union of axis-aligned rectangles via coordinate compression.
fn rect_union_area(rects: &[[f64; 4]]) -> f64 {
    let mut xs: Vec<f64> = rects.iter().flat_map(|r| [r[0], r[1]]).collect();
    let mut ys: Vec<f64> = rects.iter().flat_map(|r| [r[2], r[3]]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    ys.sort_by(f64::total_cmp);
    ys.dedup();

    let mut area = 0.0;
    for ix in 0..xs.len().saturating_sub(1) {
        for iy in 0..ys.len().saturating_sub(1) {
            let (cx, cy) = (0.5 * (xs[ix] + xs[ix + 1]), 0.5 * (ys[iy] + ys[iy + 1]));
            if rects
                .iter()
                .any(|r| cx > r[0] && cx < r[1] && cy > r[2] && cy < r[3])
            {
                area += (xs[ix + 1] - xs[ix]) * (ys[iy + 1] - ys[iy]);
            }
        }
    }
    area
}

/// Combined diffuse-blocking factor of a device list: the fraction of diffuse
/// radiation that still reaches the window.
pub fn diffuse_pass_fraction(devices: &[ShadingDevice]) -> f64 {
    devices
        .iter()
        .map(|d| 1.0 - d.diffuse_block.clamp(0.0, 1.0))
        .product()
}

/// Solar power in W transmitted through a glazing unit.
///
/// `beam_unshaded` is the unshaded beam fraction in [0, 1] (1 minus the
/// shaded fraction); diffuse components transmit with the hemispherical
/// diffuse transmittance.
pub fn window_transmission(
    glazing: &Glazing,
    plane: &PlaneIrradiance,
    beam_unshaded: f64,
    incidence_cos: f64,
) -> f64 {
    let tau_beam = glazing.beam_transmittance(incidence_cos);
    let tau_diff = glazing.diffuse_transmittance.clamp(0.0, 1.0);
    glazing.area
        * (tau_beam * plane.beam * beam_unshaded.clamp(0.0, 1.0)
            + tau_diff * (plane.sky_diffuse + plane.ground_reflected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site(latitude: f64) -> Site {
        Site {
            latitude,
            longitude: 0.0,
            timezone_meridian: 0.0,
            ground_reflectance: 0.2,
        }
    }

    // Day 81 gives zero declination under Cooper's formula.
    const EQUINOX_DAY: u32 = 81;

    #[test]
    fn equator_equinox_noon_is_zenith() {
        let sun = sun_position_at(&site(0.0), EQUINOX_DAY, 12.0);
        assert!(
            (sun.altitude - 90.0).abs() < 0.5,
            "altitude {}",
            sun.altitude
        );
    }

    #[test]
    fn latitude_40_equinox_noon_altitude() {
        // Independent check: at zero declination the noon altitude is the
        // colatitude, 90 - 40 = 50 degrees.
        let sun = sun_position_at(&site(40.0), EQUINOX_DAY, 12.0);
        assert!(
            (sun.altitude - 50.0).abs() < 0.5,
            "altitude {}",
            sun.altitude
        );
        assert!((sun.azimuth - 180.0).abs() < 0.5, "azimuth {}", sun.azimuth);
    }

    #[test]
    fn solar_midnight_sun_is_down() {
        for day in [1, 81, 180, 300] {
            let sun = sun_position_at(&site(40.0), day, 0.5);
            assert!(sun.altitude < 0.0, "day {} altitude {}", day, sun.altitude);
        }
    }

    #[test]
    fn azimuth_is_east_in_the_morning() {
        let sun = sun_position_at(&site(40.0), EQUINOX_DAY, 8.0);
        assert!(
            sun.azimuth > 0.0 && sun.azimuth < 180.0,
            "azimuth {}",
            sun.azimuth
        );
    }

    #[test]
    fn incidence_along_normal_is_one() {
        // Vertical south wall, sun due south at the horizon.
        let surface = SurfaceGeometry {
            area: 1.0,
            azimuth: 180.0,
            tilt: 90.0,
        };
        let sun = SunPosition {
            altitude: 1e-9,
            azimuth: 180.0,
        };
        assert!((incidence_cosine(&sun, &surface) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn incidence_on_horizontal_is_sine_altitude() {
        let surface = SurfaceGeometry {
            area: 1.0,
            azimuth: 0.0,
            tilt: 0.0,
        };
        let sun = SunPosition {
            altitude: 30.0,
            azimuth: 123.0,
        };
        assert!((incidence_cosine(&sun, &surface) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn incidence_clamps_behind_surface() {
        let surface = SurfaceGeometry {
            area: 1.0,
            azimuth: 180.0,
            tilt: 90.0,
        };
        let sun = SunPosition {
            altitude: 20.0,
            azimuth: 0.0,
        };
        assert_eq!(incidence_cosine(&sun, &surface), 0.0);
    }

    #[test]
    fn plane_irradiance_horizontal() {
        let record = WeatherRecord {
            hour_index: 0,
            dry_bulb: 20.0,
            direct_normal: 500.0,
            diffuse_horizontal: 120.0,
        };
        let sun = SunPosition {
            altitude: 40.0,
            azimuth: 180.0,
        };
        let surface = SurfaceGeometry {
            area: 1.0,
            azimuth: 0.0,
            tilt: 0.0,
        };
        let p = plane_irradiance(&record, &sun, &surface, 0.2);
        assert!((p.sky_diffuse - 120.0).abs() < 1e-12);
        assert!(p.ground_reflected.abs() < 1e-12);
    }

    #[test]
    fn plane_irradiance_vertical_halves() {
        // GHI = DNI*sin(alt) + DHI = 400*0.5 + 100 = 300.
        let record = WeatherRecord {
            hour_index: 0,
            dry_bulb: 20.0,
            direct_normal: 400.0,
            diffuse_horizontal: 100.0,
        };
        let sun = SunPosition {
            altitude: 30.0,
            azimuth: 180.0,
        };
        let surface = SurfaceGeometry {
            area: 1.0,
            azimuth: 180.0,
            tilt: 90.0,
        };
        let p = plane_irradiance(&record, &sun, &surface, 0.2);
        assert!((p.sky_diffuse - 50.0).abs() < 1e-9, "sky {}", p.sky_diffuse);
        assert!(
            (p.ground_reflected - 30.0).abs() < 1e-9,
            "ground {}",
            p.ground_reflected
        );
    }

    #[test]
    fn plane_irradiance_beam_cosine_product() {
        let record = WeatherRecord {
            hour_index: 0,
            dry_bulb: 20.0,
            direct_normal: 800.0,
            diffuse_horizontal: 0.0,
        };
        // Vertical wall, sun straight on at 60 degrees altitude: incidence
        // angle 60, cos = 0.5.
        let sun = SunPosition {
            altitude: 60.0,
            azimuth: 180.0,
        };
        let surface = SurfaceGeometry {
            area: 1.0,
            azimuth: 180.0,
            tilt: 90.0,
        };
        let p = plane_irradiance(&record, &sun, &surface, 0.0);
        assert!((p.beam - 400.0).abs() < 1e-9, "beam {}", p.beam);
    }

    fn south_wall() -> SurfaceGeometry {
        SurfaceGeometry {
            area: 6.0,
            azimuth: 180.0,
            tilt: 90.0,
        }
    }

    fn overhang(depth: f64) -> ShadingDevice {
        ShadingDevice {
            kind: DeviceKind::Overhang,
            depth,
            gap: 0.0,
            extension: None,
            diffuse_block: 0.0,
        }
    }

    #[test]
    fn zero_depth_casts_no_shadow() {
        let win = WindowRect {
            width: 3.0,
            height: 2.0,
        };
        for alt in [5.0, 30.0, 60.0, 85.0] {
            let sun = SunPosition {
                altitude: alt,
                azimuth: 180.0,
            };
            assert_eq!(
                shaded_fraction(&win, &south_wall(), &[overhang(0.0)], &sun),
                0.0
            );
        }
    }

    #[test]
    fn overhang_at_45_degree_profile_shades_half() {
        // Expected values frozen from the 3-D projection oracle in
        // tests/shading_oracle.rs: depth 1 at a 45 degree profile angle drops
        // a 1 m shadow band.
        let sun = SunPosition {
            altitude: 45.0,
            azimuth: 180.0,
        };
        let tall = WindowRect {
            width: 3.0,
            height: 2.0,
        };
        let f = shaded_fraction(&tall, &south_wall(), &[overhang(1.0)], &sun);
        assert!((f - 0.5).abs() < 1e-12, "fraction {}", f);

        let short = WindowRect {
            width: 3.0,
            height: 1.0,
        };
        let f = shaded_fraction(&short, &south_wall(), &[overhang(1.0)], &sun);
        assert!((f - 1.0).abs() < 1e-12, "fraction {}", f);
    }

    #[test]
    fn wingwall_band_width() {
        let win = WindowRect {
            width: 2.0,
            height: 2.0,
        };
        let fin = ShadingDevice {
            kind: DeviceKind::Wingwall,
            depth: 1.0,
            gap: 0.0,
            extension: None,
            diffuse_block: 0.0,
        };
        // 45 degrees off the normal: band width = depth * tan(45) = 1 m.
        let sun = SunPosition {
            altitude: 10.0,
            azimuth: 225.0,
        };
        let f = shaded_fraction(&win, &south_wall(), &[fin], &sun);
        assert!((f - 0.5).abs() < 1e-12, "fraction {}", f);
    }

    #[test]
    fn sun_behind_wall_means_no_shadow() {
        let win = WindowRect {
            width: 3.0,
            height: 2.0,
        };
        let sun = SunPosition {
            altitude: 30.0,
            azimuth: 0.0,
        };
        assert_eq!(
            shaded_fraction(&win, &south_wall(), &[overhang(1.0)], &sun),
            0.0
        );
    }

    fn plain_glazing() -> Glazing {
        Glazing {
            area: 6.0,
            normal_transmittance: 0.76,
            angular_coefficients: vec![0.0, 1.5, 0.0, -0.5],
            diffuse_transmittance: 0.52,
            u_value: 3.0,
        }
    }

    #[test]
    fn transmission_at_normal_incidence() {
        let g = plain_glazing();
        let plane = PlaneIrradiance {
            beam: 500.0,
            sky_diffuse: 0.0,
            ground_reflected: 0.0,
        };
        let p = window_transmission(&g, &plane, 1.0, 1.0);
        assert!((p - 6.0 * 0.76 * 500.0).abs() < 1e-9, "power {}", p);
    }

    #[test]
    fn transmission_diffuse_only() {
        let g = plain_glazing();
        let plane = PlaneIrradiance {
            beam: 0.0,
            sky_diffuse: 80.0,
            ground_reflected: 20.0,
        };
        let p = window_transmission(&g, &plane, 1.0, 0.7);
        assert!((p - 6.0 * 0.52 * 100.0).abs() < 1e-9, "power {}", p);
    }

    #[test]
    fn transmission_grazing_beam_is_zero() {
        let g = plain_glazing();
        // At 90 degrees incidence the beam on the plane is already zero.
        let plane = PlaneIrradiance::default();
        let p = window_transmission(&g, &plane, 1.0, 0.0);
        assert_eq!(p, 0.0);
    }

    #[test]
    fn default_angular_curve_is_normalized() {
        let g = plain_glazing();
        assert!((g.beam_transmittance(1.0) - 0.76).abs() < 1e-12);
        assert_eq!(g.beam_transmittance(0.0), 0.0);
    }
}
