//! Zone heat balance: wall RC networks, glazing, infiltration, internal gains
//! and distributed interior solar, stepped through a weather year with an
//! implicit (backward Euler) scheme and an ideal-loads thermostat.
//!
//! Each hour is solved in up to three passes: a free-floating solve first;
//! if the air temperature falls below the heating setpoint (and heating is
//! enabled) the system is re-solved with the air node pinned to the setpoint
//! and the balancing power reported as heating; symmetrically for cooling.
//! Exactly one of heating/cooling can be nonzero in a step.
//!
//! Longwave exchange is folded into the constant combined film coefficients,
//! so the linear system keeps a time-invariant structure; only the
//! infiltration/venting conductance varies with the hour of day.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conduction::{
    discretized_network, two_node_network, ConductionModel, Construction, RcNetwork,
};
use crate::enclosure::{
    distribute_interior_solar, view_factor_matrix, EnclosureError, EnclosureSurface,
    ViewFactorMatrix,
};
use crate::solar::{
    diffuse_pass_fraction, incidence_cosine, plane_irradiance, shaded_fraction, sun_position,
    sun_position_corrected, window_transmission, Glazing, ShadingDevice, SunPosition,
    SurfaceGeometry, WindowRect,
};
use crate::weather::{WeatherRecord, WeatherSeries, HOURS_PER_YEAR};

/// Air density used for infiltration and the default air capacitance, kg/m³.
pub const AIR_DENSITY: f64 = 1.204;
/// Air specific heat, J/kgK.
pub const AIR_SPECIFIC_HEAT: f64 = 1006.0;
/// Unit fix for annual totals: 1 MWh = 3.6e9 J.
pub const JOULES_PER_MWH: f64 = 3.6e9;

/// A 24-value hour-of-day schedule. Deserializes from either a single number
/// (constant all day) or an array of exactly 24 values.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HourlySchedule {
    values: Vec<f64>,
}

impl HourlySchedule {
    pub fn constant(value: f64) -> Self {
        HourlySchedule {
            values: vec![value; 24],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self, SimError> {
        if values.len() != 24 {
            return Err(SimError::InvalidZone(format!(
                "schedule needs 24 values, got {}",
                values.len()
            )));
        }
        Ok(HourlySchedule { values })
    }

    pub fn at(&self, hour_of_day: usize) -> f64 {
        self.values[hour_of_day % 24]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl<'de> Deserialize<'de> for HourlySchedule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Constant(f64),
            Hourly(Vec<f64>),
        }
        match Repr::deserialize(d)? {
            Repr::Constant(v) => Ok(HourlySchedule::constant(v)),
            Repr::Hourly(v) => {
                HourlySchedule::from_values(v).map_err(|e| serde::de::Error::custom(e.to_string()))
            }
        }
    }
}

/// What the exterior of a surface faces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SurfaceBoundary {
    /// Ambient air and solar exposure.
    #[default]
    Ambient,
    /// A fixed boundary temperature (ground-coupled slab); no solar.
    Ground { temperature: f64 },
}

/// One opaque envelope surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(default)]
    pub name: String,
    pub geometry: SurfaceGeometry,
    pub construction: Construction,
    /// Combined interior film coefficient, W/m²K.
    pub h_in: f64,
    /// Combined exterior film coefficient, W/m²K.
    pub h_out: f64,
    #[serde(default)]
    pub boundary: SurfaceBoundary,
    /// Rectangle dimensions, required only when `devices` shade this surface.
    #[serde(default)]
    pub rect: Option<WindowRect>,
    #[serde(default)]
    pub devices: Vec<ShadingDevice>,
}

/// One glazed opening. The glazing is massless in the balance: a direct
/// air-to-ambient conductance of `u_value` times area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    #[serde(default)]
    pub name: String,
    pub glazing: Glazing,
    pub geometry: SurfaceGeometry,
    pub rect: WindowRect,
    #[serde(default)]
    pub devices: Vec<ShadingDevice>,
}

/// Internal heat gains with a convective/radiant split; the radiant share is
/// deposited area-weighted on the opaque interior surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InternalGains {
    pub watts: f64,
    pub convective_fraction: f64,
}

/// Ideal-loads thermostat: heating holds the air at `heat_setpoint` from
/// below, cooling holds it at `cool_setpoint` from above, with a dead band in
/// between. `venting` adds scheduled air changes on top of infiltration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thermostat {
    pub heat_setpoint: f64,
    pub cool_setpoint: f64,
    #[serde(default = "default_true")]
    pub heating_enabled: bool,
    #[serde(default)]
    pub venting: Option<HourlySchedule>,
}

fn default_true() -> bool {
    true
}

/// Options for the interior solar first bounce and solar timing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct SolarModelOptions {
    /// Fraction of transmitted solar sent to floor surfaces (tilt >= 135°)
    /// first; the remainder is spread area-weighted over all opaque
    /// surfaces. `None` spreads everything area-weighted.
    #[serde(default)]
    pub beam_to_floor_fraction: Option<f64>,
    /// Apply the equation-of-time + longitude correction when converting
    /// hour indices to sun positions.
    #[serde(default)]
    pub use_equation_of_time: bool,
}

/// Complete parametric description of one thermal zone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneModel {
    /// Zone air volume, m³.
    pub volume: f64,
    /// Zone air capacitance in J/K; defaults to air density × specific heat ×
    /// volume.
    #[serde(default)]
    pub air_capacitance: Option<f64>,
    pub surfaces: Vec<SurfaceSpec>,
    #[serde(default)]
    pub windows: Vec<WindowSpec>,
    /// Infiltration in air changes per hour, by hour of day.
    pub infiltration_ach: HourlySchedule,
    pub internal_gains: InternalGains,
    pub thermostat: Thermostat,
    #[serde(default)]
    pub solar: SolarModelOptions,
}

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("invalid zone: {0}")]
    InvalidZone(String),
    #[error("annual simulation needs {expected} weather records, got {got}")]
    WeatherLength { expected: usize, got: usize },
    #[error("zone system is singular")]
    SingularSystem,
    #[error(transparent)]
    Enclosure(#[from] EnclosureError),
}

impl ZoneModel {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.volume <= 0.0 {
            return Err(SimError::InvalidZone("volume must be positive".into()));
        }
        if self.surfaces.is_empty() {
            return Err(SimError::InvalidZone(
                "zone needs at least one opaque surface".into(),
            ));
        }
        for s in &self.surfaces {
            if s.geometry.area <= 0.0 {
                return Err(SimError::InvalidZone(format!(
                    "surface '{}': area must be positive",
                    s.name
                )));
            }
            if s.h_in <= 0.0 || s.h_out <= 0.0 {
                return Err(SimError::InvalidZone(format!(
                    "surface '{}': film coefficients must be positive",
                    s.name
                )));
            }
            if !s.devices.is_empty() && s.rect.is_none() {
                return Err(SimError::InvalidZone(format!(
                    "surface '{}': shading devices need rect dimensions",
                    s.name
                )));
            }
            s.construction
                .validate()
                .map_err(|e| SimError::InvalidZone(format!("surface '{}': {}", s.name, e)))?;
        }
        for w in &self.windows {
            let g = &w.glazing;
            let ok = g.area > 0.0
                && (0.0..=1.0).contains(&g.normal_transmittance)
                && (0.0..=1.0).contains(&g.diffuse_transmittance)
                && g.u_value > 0.0;
            if !ok {
                return Err(SimError::InvalidZone(format!(
                    "window '{}': invalid glazing",
                    w.name
                )));
            }
            let rect_area = w.rect.width * w.rect.height;
            if rect_area <= 0.0 || ((rect_area - g.area) / g.area).abs() > 1e-9 {
                return Err(SimError::InvalidZone(format!(
                    "window '{}': rect {}x{} does not match glazed area {}",
                    w.name, w.rect.width, w.rect.height, g.area
                )));
            }
        }
        if self.infiltration_ach.values().iter().any(|&v| v < 0.0) {
            return Err(SimError::InvalidZone(
                "infiltration must be non-negative".into(),
            ));
        }
        if let Some(v) = &self.thermostat.venting {
            if v.values().iter().any(|&x| x < 0.0) {
                return Err(SimError::InvalidZone("venting must be non-negative".into()));
            }
        }
        if !(0.0..=1.0).contains(&self.internal_gains.convective_fraction) {
            return Err(SimError::InvalidZone(
                "convective fraction must be in [0, 1]".into(),
            ));
        }
        if self.thermostat.heating_enabled
            && self.thermostat.heat_setpoint >= self.thermostat.cool_setpoint
        {
            return Err(SimError::InvalidZone(
                "heating setpoint must lie below the cooling setpoint".into(),
            ));
        }
        if let Some(f) = self.solar.beam_to_floor_fraction {
            if !(0.0..=1.0).contains(&f) {
                return Err(SimError::InvalidZone(
                    "beam_to_floor_fraction must be in [0, 1]".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn air_capacitance_value(&self) -> f64 {
        self.air_capacitance
            .unwrap_or(AIR_DENSITY * AIR_SPECIFIC_HEAT * self.volume)
    }
}

/// All node temperatures of an assembled zone (wall nodes then the air node).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemState {
    pub temperatures: Vec<f64>,
}

/// Per-hour solar inputs to a step: absorbed power on each opaque exterior
/// surface and total power transmitted into the zone, both in W.
#[derive(Debug, Clone, PartialEq)]
pub struct HourGains {
    pub exterior_absorbed: Vec<f64>,
    pub transmitted: f64,
}

impl HourGains {
    pub fn dark(n_surfaces: usize) -> Self {
        HourGains {
            exterior_absorbed: vec![0.0; n_surfaces],
            transmitted: 0.0,
        }
    }
}

/// Ideal loads delivered in one step, W (at most one is nonzero).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepLoads {
    pub heating: f64,
    pub cooling: f64,
}

struct AssembledSurface {
    exterior_node: usize,
    interior_node: usize,
}

/// A zone model assembled into a solvable node system for one conduction
/// model choice.
pub struct ZoneSystem {
    model: ZoneModel,
    conduction: ConductionModel,
    node_count: usize,
    air: usize,
    capacitance: Vec<f64>,
    /// Internal conductances (W/K), including interior films to the air node.
    edges: Vec<(usize, usize, f64)>,
    /// (node, conductance W/K, boundary) exterior couplings.
    boundary_edges: Vec<(usize, f64, SurfaceBoundary)>,
    /// Direct air-to-ambient glazing conductance, W/K.
    ua_glazing: f64,
    surfaces: Vec<AssembledSurface>,
    enclosure: Vec<EnclosureSurface>,
    view_factors: Option<ViewFactorMatrix>,
    initial_weights: Vec<f64>,
    /// Area-weighted share of radiant internal gains per opaque surface.
    radiant_shares: Vec<f64>,
}

impl ZoneSystem {
    pub fn assemble(model: &ZoneModel, conduction: ConductionModel) -> Result<Self, SimError> {
        model.validate()?;

        let mut capacitance = Vec::new();
        let mut edges = Vec::new();
        let mut boundary_edges = Vec::new();
        let mut surfaces = Vec::new();

        let mut node = 0usize;
        for s in &model.surfaces {
            let net: RcNetwork = match conduction {
                ConductionModel::TwoNode => two_node_network(&s.construction),
                ConductionModel::Discretized => discretized_network(&s.construction),
            };
            let area = s.geometry.area;
            let offset = node;
            for &c in &net.node_capacitances {
                capacitance.push(c * area);
            }
            for &(a, b, g) in &net.conductances {
                edges.push((offset + a, offset + b, g * area));
            }
            boundary_edges.push((offset + net.exterior_node, s.h_out * area, s.boundary));
            surfaces.push(AssembledSurface {
                exterior_node: offset + net.exterior_node,
                interior_node: offset + net.interior_node,
            });
            node += net.node_count();
        }

        let air = node;
        capacitance.push(model.air_capacitance_value());
        for (spec, asm) in model.surfaces.iter().zip(&surfaces) {
            edges.push((asm.interior_node, air, spec.h_in * spec.geometry.area));
        }

        let ua_glazing: f64 = model
            .windows
            .iter()
            .map(|w| w.glazing.u_value * w.glazing.area)
            .sum();

        // Enclosure surface list: opaque interiors then windows.
        let mut enclosure: Vec<EnclosureSurface> = model
            .surfaces
            .iter()
            .map(|s| EnclosureSurface {
                area: s.geometry.area,
                solar_absorptance: s.construction.interior_solar_absorptance,
                back_loss_transmittance: 0.0,
            })
            .collect();
        for w in &model.windows {
            enclosure.push(EnclosureSurface {
                area: w.glazing.area,
                solar_absorptance: 0.0,
                back_loss_transmittance: w.glazing.diffuse_transmittance,
            });
        }
        let view_factors = if model.windows.is_empty() {
            None
        } else {
            Some(view_factor_matrix(&enclosure)?)
        };

        let initial_weights = first_bounce_weights(model, enclosure.len());

        let opaque_area: f64 = model.surfaces.iter().map(|s| s.geometry.area).sum();
        let radiant_shares: Vec<f64> = model
            .surfaces
            .iter()
            .map(|s| s.geometry.area / opaque_area)
            .collect();

        Ok(ZoneSystem {
            model: model.clone(),
            conduction,
            node_count: air + 1,
            air,
            capacitance,
            edges,
            boundary_edges,
            ua_glazing,
            surfaces,
            enclosure,
            view_factors,
            initial_weights,
            radiant_shares,
        })
    }

    pub fn conduction_model(&self) -> ConductionModel {
        self.conduction
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Index of the zone-air node (always the last one).
    pub fn air_node(&self) -> usize {
        self.air
    }

    /// A uniform-temperature starting state.
    pub fn uniform_state(&self, temperature: f64) -> SystemState {
        SystemState {
            temperatures: vec![temperature; self.node_count],
        }
    }

    /// Solar inputs for one hour: exterior absorption per opaque surface and
    /// transmitted power through the windows, with beam shading applied.
    pub fn solar_gains(
        &self,
        ground_reflectance: f64,
        record: &WeatherRecord,
        sun: &SunPosition,
    ) -> HourGains {
        let model = &self.model;
        let mut exterior_absorbed = vec![0.0; model.surfaces.len()];
        if record.direct_normal == 0.0 && record.diffuse_horizontal == 0.0 {
            return HourGains {
                exterior_absorbed,
                transmitted: 0.0,
            };
        }

        for (i, s) in model.surfaces.iter().enumerate() {
            if !matches!(s.boundary, SurfaceBoundary::Ambient) {
                continue;
            }
            let alpha = s.construction.exterior_solar_absorptance;
            if alpha == 0.0 {
                continue;
            }
            let plane = plane_irradiance(record, sun, &s.geometry, ground_reflectance);
            let beam_unshaded = match (&s.rect, s.devices.is_empty()) {
                (Some(rect), false) => 1.0 - shaded_fraction(rect, &s.geometry, &s.devices, sun),
                _ => 1.0,
            };
            let diffuse_pass = diffuse_pass_fraction(&s.devices);
            let incident = plane.beam * beam_unshaded
                + (plane.sky_diffuse + plane.ground_reflected) * diffuse_pass;
            exterior_absorbed[i] = alpha * incident * s.geometry.area;
        }

        let mut transmitted = 0.0;
        for w in &model.windows {
            let mut plane = plane_irradiance(record, sun, &w.geometry, ground_reflectance);
            let diffuse_pass = diffuse_pass_fraction(&w.devices);
            plane.sky_diffuse *= diffuse_pass;
            plane.ground_reflected *= diffuse_pass;
            let beam_unshaded = if w.devices.is_empty() {
                1.0
            } else {
                1.0 - shaded_fraction(&w.rect, &w.geometry, &w.devices, sun)
            };
            let cos_inc = incidence_cosine(sun, &w.geometry);
            transmitted += window_transmission(&w.glazing, &plane, beam_unshaded, cos_inc);
        }

        HourGains {
            exterior_absorbed,
            transmitted,
        }
    }

    /// Advances the state by `dt` seconds with the given boundary conditions
    /// and solar gains, applying the ideal-loads thermostat.
    pub fn step(
        &self,
        state: &mut SystemState,
        t_ambient: f64,
        hour_of_day: usize,
        gains: &HourGains,
        dt: f64,
    ) -> Result<StepLoads, SimError> {
        let n = self.node_count;
        let air = self.air;
        let model = &self.model;

        let mut ach = model.infiltration_ach.at(hour_of_day);
        if let Some(v) = &model.thermostat.venting {
            ach += v.at(hour_of_day);
        }
        let ua_infiltration = ach / 3600.0 * model.volume * AIR_DENSITY * AIR_SPECIFIC_HEAT;
        let ua_air_ambient = self.ua_glazing + ua_infiltration;

        // Source vector.
        let mut q = vec![0.0; n];
        for (i, asm) in self.surfaces.iter().enumerate() {
            q[asm.exterior_node] += gains.exterior_absorbed[i];
        }
        if gains.transmitted > 0.0 {
            if let Some(factors) = &self.view_factors {
                let split = distribute_interior_solar(
                    gains.transmitted,
                    &self.enclosure,
                    factors,
                    &self.initial_weights,
                )?;
                for (i, asm) in self.surfaces.iter().enumerate() {
                    q[asm.interior_node] += split.absorbed[i];
                }
                // Window entries absorb nothing by construction; the lost_out
                // share leaves the balance entirely.
            }
        }
        let gains_w = model.internal_gains.watts;
        let convective = model.internal_gains.convective_fraction;
        q[air] += gains_w * convective;
        for (asm, share) in self.surfaces.iter().zip(&self.radiant_shares) {
            q[asm.interior_node] += gains_w * (1.0 - convective) * share;
        }

        // Assemble M = C/dt + K and the right-hand side.
        let mut m = DMatrix::<f64>::zeros(n, n);
        let mut rhs = DVector::<f64>::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.capacitance[i] / dt;
            rhs[i] = self.capacitance[i] / dt * state.temperatures[i] + q[i];
        }
        for &(a, b, g) in &self.edges {
            m[(a, a)] += g;
            m[(b, b)] += g;
            m[(a, b)] -= g;
            m[(b, a)] -= g;
        }
        for &(node, g, boundary) in &self.boundary_edges {
            let t_bound = match boundary {
                SurfaceBoundary::Ambient => t_ambient,
                SurfaceBoundary::Ground { temperature } => temperature,
            };
            m[(node, node)] += g;
            rhs[node] += g * t_bound;
        }
        m[(air, air)] += ua_air_ambient;
        rhs[air] += ua_air_ambient * t_ambient;

        // Pass 1: free float.
        let free = m.clone().lu().solve(&rhs).ok_or(SimError::SingularSystem)?;
        let t_free = free[air];

        let thermostat = &model.thermostat;
        let setpoint = if thermostat.heating_enabled && t_free < thermostat.heat_setpoint {
            Some((thermostat.heat_setpoint, true))
        } else if t_free > thermostat.cool_setpoint {
            Some((thermostat.cool_setpoint, false))
        } else {
            None
        };

        let loads = match setpoint {
            None => {
                state.temperatures.copy_from_slice(free.as_slice());
                StepLoads::default()
            }
            Some((t_set, is_heating)) => {
                // Pass 2: pin the air node (last index) and solve the walls.
                let m_red = m.view((0, 0), (n - 1, n - 1)).into_owned();
                let mut rhs_red = DVector::<f64>::zeros(n - 1);
                for i in 0..n - 1 {
                    rhs_red[i] = rhs[i];
                }
                for &(a, b, g) in &self.edges {
                    if b == air && a < n - 1 {
                        rhs_red[a] += g * t_set;
                    } else if a == air && b < n - 1 {
                        rhs_red[b] += g * t_set;
                    }
                }
                let pinned = m_red.lu().solve(&rhs_red).ok_or(SimError::SingularSystem)?;

                // Balancing power from the air-node equation residual.
                let mut balance = self.capacitance[air] / dt * (t_set - state.temperatures[air])
                    + ua_air_ambient * (t_set - t_ambient)
                    - q[air];
                for &(a, b, g) in &self.edges {
                    if a == air {
                        balance += g * (t_set - pinned[b]);
                    } else if b == air {
                        balance += g * (t_set - pinned[a]);
                    }
                }

                for i in 0..n - 1 {
                    state.temperatures[i] = pinned[i];
                }
                state.temperatures[air] = t_set;

                if is_heating {
                    StepLoads {
                        heating: balance.max(0.0),
                        cooling: 0.0,
                    }
                } else {
                    StepLoads {
                        heating: 0.0,
                        cooling: (-balance).max(0.0),
                    }
                }
            }
        };

        Ok(loads)
    }
}

/// First-bounce weights over the enclosure order (opaque surfaces then
/// windows, which receive none of the first bounce).
fn first_bounce_weights(model: &ZoneModel, enclosure_len: usize) -> Vec<f64> {
    let mut weights = vec![0.0; enclosure_len];

    let opaque_area: f64 = model.surfaces.iter().map(|s| s.geometry.area).sum();
    let floor_area: f64 = model
        .surfaces
        .iter()
        .filter(|s| s.geometry.tilt >= 135.0)
        .map(|s| s.geometry.area)
        .sum();

    let floor_fraction = match model.solar.beam_to_floor_fraction {
        Some(f) if floor_area > 0.0 => f,
        _ => 0.0,
    };

    for (i, s) in model.surfaces.iter().enumerate() {
        let mut w = (1.0 - floor_fraction) * s.geometry.area / opaque_area;
        if floor_fraction > 0.0 && s.geometry.tilt >= 135.0 {
            w += floor_fraction * s.geometry.area / floor_area;
        }
        weights[i] = w;
    }

    // Guard the exact-sum invariant of the distribution step.
    let sum: f64 = weights.iter().sum();
    if sum > 0.0 {
        for w in &mut weights {
            *w /= sum;
        }
    }
    weights
}

/// Hourly results and annual totals of one zone simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    /// Zone air temperature at the end of each hour, °C.
    pub hourly_air_temp: Vec<f64>,
    /// Mean heating power over each hour, W (>= 0).
    pub hourly_heating: Vec<f64>,
    /// Mean cooling power over each hour, W (>= 0).
    pub hourly_cooling: Vec<f64>,
    pub annual_heating_mwh: f64,
    pub annual_cooling_mwh: f64,
}

/// Numerical options for the annual march.
#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    /// Integer sub-steps per hour (weather held constant within the hour).
    pub substeps: usize,
    /// Warm-up convergence threshold on the state change across one repeated
    /// first day, K.
    pub warmup_tolerance: f64,
    /// Maximum first-day repetitions during warm-up.
    pub warmup_max_days: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            substeps: 1,
            warmup_tolerance: 1e-4,
            warmup_max_days: 30,
        }
    }
}

/// Runs a full annual simulation with the chosen wall conduction model and
/// default numerical options.
pub fn simulate_annual(
    zone: &ZoneModel,
    weather: &WeatherSeries,
    model: ConductionModel,
) -> Result<SimulationResult, SimError> {
    simulate_annual_with(zone, weather, model, &SimOptions::default())
}

/// Annual simulation with explicit numerical options.
///
/// The state is warmed up by repeating the first day until it settles (or the
/// repetition cap is reached), then the year is traversed once. The run is
/// deterministic for identical inputs.
pub fn simulate_annual_with(
    zone: &ZoneModel,
    weather: &WeatherSeries,
    model: ConductionModel,
    options: &SimOptions,
) -> Result<SimulationResult, SimError> {
    if weather.records.len() != HOURS_PER_YEAR {
        return Err(SimError::WeatherLength {
            expected: HOURS_PER_YEAR,
            got: weather.records.len(),
        });
    }
    let substeps = options.substeps.max(1);
    let dt = 3600.0 / substeps as f64;
    let system = ZoneSystem::assemble(zone, model)?;

    let sun_for = |record: &WeatherRecord| {
        if zone.solar.use_equation_of_time {
            sun_position_corrected(&weather.site, record.hour_index)
        } else {
            sun_position(&weather.site, record.hour_index)
        }
    };

    let mut state = system.uniform_state(20.0);

    // Warm-up: repeat the first day until the state stops moving.
    for _ in 0..options.warmup_max_days {
        let before = state.temperatures.clone();
        for record in &weather.records[..24] {
            let sun = sun_for(record);
            let gains = system.solar_gains(weather.site.ground_reflectance, record, &sun);
            let hour_of_day = (record.hour_index % 24) as usize;
            for _ in 0..substeps {
                system.step(&mut state, record.dry_bulb, hour_of_day, &gains, dt)?;
            }
        }
        let change = state
            .temperatures
            .iter()
            .zip(&before)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if change < options.warmup_tolerance {
            break;
        }
    }

    let n_hours = weather.records.len();
    let mut hourly_air_temp = Vec::with_capacity(n_hours);
    let mut hourly_heating = Vec::with_capacity(n_hours);
    let mut hourly_cooling = Vec::with_capacity(n_hours);

    for record in &weather.records {
        let sun = sun_for(record);
        let gains = system.solar_gains(weather.site.ground_reflectance, record, &sun);
        let hour_of_day = (record.hour_index % 24) as usize;
        let mut heat_sum = 0.0;
        let mut cool_sum = 0.0;
        for _ in 0..substeps {
            let loads = system.step(&mut state, record.dry_bulb, hour_of_day, &gains, dt)?;
            heat_sum += loads.heating;
            cool_sum += loads.cooling;
        }
        hourly_air_temp.push(state.temperatures[system.air]);
        hourly_heating.push(heat_sum / substeps as f64);
        hourly_cooling.push(cool_sum / substeps as f64);
    }

    let annual_heating_mwh = hourly_heating.iter().sum::<f64>() * 3600.0 / JOULES_PER_MWH;
    let annual_cooling_mwh = hourly_cooling.iter().sum::<f64>() * 3600.0 / JOULES_PER_MWH;

    Ok(SimulationResult {
        hourly_air_temp,
        hourly_heating,
        hourly_cooling,
        annual_heating_mwh,
        annual_cooling_mwh,
    })
}
