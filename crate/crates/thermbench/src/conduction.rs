//! Wall heat conduction as RC networks under the thermal-electrical analogy.
//!
//! Two model orders are available for the same layered construction:
//!
//! - [`two_node_network`]: the whole wall lumped into its two surface nodes,
//!   half the capacitance on each, one through-conductance.
//! - [`discretized_network`]: 2n+1 nodes for n layers (surfaces, layer
//!   interfaces, layer centers), placing thermal inertia inside the wall.
//!
//! A fine finite-difference grid ([`fine_grid_network`], [`fine_grid_oracle`])
//! serves as the brute-force reference for judging model order.
//!
//! All networks are per unit area: capacitances in J/m²K, conductances in
//! W/m²K. Surface film coefficients are not part of the network; they are
//! zone-level couplings.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One homogeneous material layer, listed outside to inside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    /// Thickness in m, > 0.
    pub thickness: f64,
    /// Thermal conductivity in W/mK, > 0.
    pub conductivity: f64,
    /// Density in kg/m³, >= 0 (0 for pure-resistance layers).
    pub density: f64,
    /// Specific heat in J/kgK, >= 0.
    pub specific_heat: f64,
}

impl Layer {
    /// Per-area thermal resistance, m²K/W.
    pub fn unit_resistance(&self) -> f64 {
        self.thickness / self.conductivity
    }

    /// Per-area heat capacitance, J/m²K.
    pub fn unit_capacitance(&self) -> f64 {
        self.density * self.specific_heat * self.thickness
    }
}

/// A layered wall construction with its surface solar absorptances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    /// Layers ordered outside to inside, at least one.
    pub layers: Vec<Layer>,
    /// Exterior surface solar absorptance, [0, 1].
    pub exterior_solar_absorptance: f64,
    /// Interior surface solar absorptance, [0, 1].
    pub interior_solar_absorptance: f64,
}

impl Construction {
    /// Series resistance outside surface to inside surface, m²K/W.
    pub fn total_resistance(&self) -> f64 {
        self.layers.iter().map(Layer::unit_resistance).sum()
    }

    /// Total per-area capacitance, J/m²K.
    pub fn total_capacitance(&self) -> f64 {
        self.layers.iter().map(Layer::unit_capacitance).sum()
    }

    pub fn validate(&self) -> Result<(), ConductionError> {
        if self.layers.is_empty() {
            return Err(ConductionError::InvalidConstruction(
                "construction needs at least one layer".into(),
            ));
        }
        for (i, l) in self.layers.iter().enumerate() {
            if l.thickness <= 0.0 || l.conductivity <= 0.0 {
                return Err(ConductionError::InvalidConstruction(format!(
                    "layer {}: thickness and conductivity must be positive",
                    i
                )));
            }
            if l.density < 0.0 || l.specific_heat < 0.0 {
                return Err(ConductionError::InvalidConstruction(format!(
                    "layer {}: density and specific heat must be non-negative",
                    i
                )));
            }
        }
        for (name, a) in [
            ("exterior", self.exterior_solar_absorptance),
            ("interior", self.interior_solar_absorptance),
        ] {
            if !(0.0..=1.0).contains(&a) {
                return Err(ConductionError::InvalidConstruction(format!(
                    "{} solar absorptance outside [0, 1]",
                    name
                )));
            }
        }
        Ok(())
    }
}

/// Which wall model order to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductionModel {
    TwoNode,
    Discretized,
}

impl std::fmt::Display for ConductionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConductionModel::TwoNode => write!(f, "two_node"),
            ConductionModel::Discretized => write!(f, "discretized"),
        }
    }
}

/// A per-unit-area RC network for one wall.
///
/// By construction the capacitance sum equals the construction's total
/// capacitance and the series resistance between the two terminals equals the
/// construction's total resistance.
#[derive(Debug, Clone, PartialEq)]
pub struct RcNetwork {
    /// Node capacitances in J/m²K.
    pub node_capacitances: Vec<f64>,
    /// Undirected conductances (node_a, node_b, W/m²K > 0).
    pub conductances: Vec<(usize, usize, f64)>,
    /// Index of the exterior-surface terminal node.
    pub exterior_node: usize,
    /// Index of the interior-surface terminal node.
    pub interior_node: usize,
}

impl RcNetwork {
    pub fn node_count(&self) -> usize {
        self.node_capacitances.len()
    }

    pub fn capacitance_sum(&self) -> f64 {
        self.node_capacitances.iter().sum()
    }

    /// Series resistance between the terminals, from a steady solve.
    pub fn terminal_resistance(&self) -> Result<f64, ConductionError> {
        let flux = steady_flux(self, 1.0, 0.0)?;
        if flux == 0.0 {
            return Err(ConductionError::SingularNetwork);
        }
        Ok(1.0 / flux)
    }

    fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b, _) in &self.conductances {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConductionError {
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("network is singular or disconnected")]
    SingularNetwork,
    #[error("explicit step exceeds the stability bound (dt_max = {dt_max} s)")]
    UnstableStep { dt_max: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Builds the surface-lumped two-node model: a single conductance through the
/// wall with half of the total capacitance placed on each surface node.
///
/// Node 0 is the exterior surface, node 1 the interior surface.
pub fn two_node_network(c: &Construction) -> RcNetwork {
    let half_cap = 0.5 * c.total_capacitance();
    RcNetwork {
        node_capacitances: vec![half_cap, half_cap],
        conductances: vec![(0, 1, 1.0 / c.total_resistance())],
        exterior_node: 0,
        interior_node: 1,
    }
}

/// Builds the layer-discretized model: 2n+1 nodes for n layers.
///
/// Node layout, outside to inside: surface, layer 1 center, interface,
/// layer 2 center, ..., surface. Each layer contributes two half-layer
/// conductances of 2/r and splits its capacitance half to its center node
/// and a quarter to each bounding node, so the totals stay exact.
pub fn discretized_network(c: &Construction) -> RcNetwork {
    let n = c.layers.len();
    let node_count = 2 * n + 1;
    let mut caps = vec![0.0; node_count];
    let mut conductances = Vec::with_capacity(2 * n);

    for (i, layer) in c.layers.iter().enumerate() {
        let outer = 2 * i;
        let center = 2 * i + 1;
        let inner = 2 * i + 2;
        let g_half = 2.0 / layer.unit_resistance();
        conductances.push((outer, center, g_half));
        conductances.push((center, inner, g_half));

        let cap = layer.unit_capacitance();
        caps[center] += 0.5 * cap;
        caps[outer] += 0.25 * cap;
        caps[inner] += 0.25 * cap;
    }

    RcNetwork {
        node_capacitances: caps,
        conductances,
        exterior_node: 0,
        interior_node: node_count - 1,
    }
}

/// Builds a fine finite-difference grid over the construction for use as a
/// brute-force reference.
///
/// Each layer is subdivided into cells proportional to its thickness (at
/// least one per layer, about `cells` in total, uniform within a layer), so
/// cell boundaries align with layer boundaries and the network's terminal
/// resistance and capacitance sum stay exact. Terminal surface nodes are
/// massless; cell nodes carry the mass of their slab.
pub fn fine_grid_network(c: &Construction, cells: usize) -> Result<RcNetwork, ConductionError> {
    if cells < c.layers.len() {
        return Err(ConductionError::InvalidParameter(format!(
            "need at least one cell per layer ({} layers)",
            c.layers.len()
        )));
    }
    let total_thickness: f64 = c.layers.iter().map(|l| l.thickness).sum();

    // Per-layer cell counts, proportional to thickness.
    let mut counts: Vec<usize> = c
        .layers
        .iter()
        .map(|l| ((cells as f64 * l.thickness / total_thickness).round() as usize).max(1))
        .collect();
    // Nudge the total back onto the request so `cells` is honored for
    // single-layer walls and approximated for multi-layer ones.
    while counts.iter().sum::<usize>() > cells {
        let i = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 1)
            .max_by_key(|(_, &c)| c)
            .map(|(i, _)| i);
        match i {
            Some(i) => counts[i] -= 1,
            None => break,
        }
    }
    while counts.iter().sum::<usize>() < cells {
        let (i, _) = counts
            .iter()
            .enumerate()
            .max_by(|a, b| {
                let da = c.layers[a.0].thickness / *a.1 as f64;
                let db = c.layers[b.0].thickness / *b.1 as f64;
                da.total_cmp(&db)
            })
            .unwrap();
        counts[i] += 1;
    }

    // Cell sequence with (width, layer index).
    let mut cell_layers = Vec::with_capacity(cells);
    for (li, &count) in counts.iter().enumerate() {
        let width = c.layers[li].thickness / count as f64;
        for _ in 0..count {
            cell_layers.push((width, li));
        }
    }

    let n_cells = cell_layers.len();
    let node_count = n_cells + 2; // exterior surface, cells, interior surface
    let mut caps = vec![0.0; node_count];
    let mut conductances = Vec::with_capacity(n_cells + 1);

    for (i, &(width, li)) in cell_layers.iter().enumerate() {
        let layer = &c.layers[li];
        caps[i + 1] = layer.density * layer.specific_heat * width;
    }

    // Exterior surface to first cell center: half-cell resistance.
    let (w0, l0) = cell_layers[0];
    conductances.push((0, 1, 2.0 * c.layers[l0].conductivity / w0));
    // Cell-to-cell: series of the two half-cell resistances.
    for i in 0..n_cells - 1 {
        let (wa, la) = cell_layers[i];
        let (wb, lb) = cell_layers[i + 1];
        let r = 0.5 * wa / c.layers[la].conductivity + 0.5 * wb / c.layers[lb].conductivity;
        conductances.push((i + 1, i + 2, 1.0 / r));
    }
    let (wl, ll) = cell_layers[n_cells - 1];
    conductances.push((n_cells, n_cells + 1, 2.0 * c.layers[ll].conductivity / wl));

    Ok(RcNetwork {
        node_capacitances: caps,
        conductances,
        exterior_node: 0,
        interior_node: node_count - 1,
    })
}

/// Steady heat flux in W/m² through a network with both terminals held at
/// fixed temperatures, capacitances ignored.
pub fn steady_flux(
    net: &RcNetwork,
    t_exterior: f64,
    t_interior: f64,
) -> Result<f64, ConductionError> {
    if !net.is_connected() {
        return Err(ConductionError::SingularNetwork);
    }
    let n = net.node_count();
    let ext = net.exterior_node;
    let int = net.interior_node;

    // Unknowns: every node except the two terminals.
    let free: Vec<usize> = (0..n).filter(|&i| i != ext && i != int).collect();
    let mut temps = vec![0.0; n];
    temps[ext] = t_exterior;
    temps[int] = t_interior;

    if !free.is_empty() {
        let index_of: Vec<Option<usize>> = {
            let mut m = vec![None; n];
            for (k, &i) in free.iter().enumerate() {
                m[i] = Some(k);
            }
            m
        };
        let m = free.len();
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut b = DVector::<f64>::zeros(m);
        for &(p, q, g) in &net.conductances {
            for (u, v) in [(p, q), (q, p)] {
                if let Some(iu) = index_of[u] {
                    a[(iu, iu)] += g;
                    match index_of[v] {
                        Some(iv) => a[(iu, iv)] -= g,
                        None => b[iu] += g * temps[v],
                    }
                }
            }
        }
        let x = a.lu().solve(&b).ok_or(ConductionError::SingularNetwork)?;
        for (k, &i) in free.iter().enumerate() {
            temps[i] = x[k];
        }
    }

    let mut flux = 0.0;
    for &(p, q, g) in &net.conductances {
        if p == ext {
            flux += g * (temps[ext] - temps[q]);
        } else if q == ext {
            flux += g * (temps[ext] - temps[p]);
        }
    }
    Ok(flux)
}

/// Boundary drive for [`fine_grid_oracle`]: exterior surface temperature over
/// time, and either a prescribed interior surface temperature or an adiabatic
/// interior surface.
pub struct OracleBoundary<'a> {
    pub exterior: &'a dyn Fn(f64) -> f64,
    /// `None` keeps the interior surface adiabatic.
    pub interior: Option<&'a dyn Fn(f64) -> f64>,
}

/// Result of a transient fine-grid or RC-network march.
#[derive(Debug, Clone)]
pub struct TransientSolution {
    pub dt: f64,
    /// Interior-surface temperature at the end of every step.
    pub interior_surface: Vec<f64>,
    /// All node temperatures at the final time.
    pub final_profile: Vec<f64>,
}

impl TransientSolution {
    /// Interior-surface temperature sampled at (or just after) time t.
    pub fn at(&self, t: f64) -> f64 {
        let idx = ((t / self.dt).ceil() as usize)
            .saturating_sub(1)
            .min(self.interior_surface.len() - 1);
        self.interior_surface[idx]
    }
}

/// Explicit finite-difference march of the fine grid: the brute-force
/// reference for model-order comparisons.
///
/// Starts from a uniform `t_initial` profile. Errs with [`ConductionError::UnstableStep`]
/// when `dt` exceeds the explicit stability bound of the discretization.
pub fn fine_grid_oracle(
    c: &Construction,
    cells: usize,
    dt: f64,
    boundary: &OracleBoundary,
    horizon: f64,
    t_initial: f64,
) -> Result<TransientSolution, ConductionError> {
    if cells < 11 {
        return Err(ConductionError::InvalidParameter(
            "oracle needs at least 11 cells".into(),
        ));
    }
    if dt <= 0.0 || horizon <= 0.0 {
        return Err(ConductionError::InvalidParameter(
            "dt and horizon must be positive".into(),
        ));
    }
    let net = fine_grid_network(c, cells)?;
    let n = net.node_count();
    let ext = net.exterior_node;
    let int = net.interior_node;

    // Incident conductance sums per node for the stability bound.
    let mut g_sum = vec![0.0; n];
    for &(p, q, g) in &net.conductances {
        g_sum[p] += g;
        g_sum[q] += g;
    }
    let mut dt_max = f64::INFINITY;
    for (i, (&cap, &g)) in net.node_capacitances.iter().zip(&g_sum).enumerate() {
        if i == ext || i == int {
            continue;
        }
        dt_max = dt_max.min(cap / g);
    }
    if dt > dt_max {
        return Err(ConductionError::UnstableStep { dt_max });
    }

    let steps = (horizon / dt).round().max(1.0) as usize;
    let mut temps = vec![t_initial; n];
    let mut next = temps.clone();
    let mut interior_surface = Vec::with_capacity(steps);

    // Conductances adjacent to the interior surface (used for the adiabatic
    // reconstruction: zero flux means the surface tracks the last cell).
    let last_cell = int - 1;

    for step in 0..steps {
        let t = step as f64 * dt;
        temps[ext] = (boundary.exterior)(t);
        match boundary.interior {
            Some(f) => temps[int] = f(t),
            None => temps[int] = temps[last_cell],
        }

        next.copy_from_slice(&temps);
        for &(p, q, g) in &net.conductances {
            let flow = g * (temps[p] - temps[q]);
            if p != ext && p != int {
                next[p] -= dt * flow / net.node_capacitances[p];
            }
            if q != ext && q != int {
                next[q] += dt * flow / net.node_capacitances[q];
            }
        }
        std::mem::swap(&mut temps, &mut next);

        let t_end = (step + 1) as f64 * dt;
        temps[ext] = (boundary.exterior)(t_end);
        match boundary.interior {
            Some(f) => temps[int] = f(t_end),
            None => temps[int] = temps[last_cell],
        }
        interior_surface.push(temps[int]);
    }

    Ok(TransientSolution {
        dt,
        interior_surface,
        final_profile: temps,
    })
}

/// Implicit (backward Euler) march of an RC network with the exterior
/// terminal pinned to a prescribed temperature and the interior surface left
/// free (adiabatic beyond the wall). Used to compare model orders against the
/// fine-grid oracle.
pub fn transient_interior_response(
    net: &RcNetwork,
    exterior: &dyn Fn(f64) -> f64,
    dt: f64,
    horizon: f64,
    t_initial: f64,
) -> Result<TransientSolution, ConductionError> {
    if dt <= 0.0 || horizon <= 0.0 {
        return Err(ConductionError::InvalidParameter(
            "dt and horizon must be positive".into(),
        ));
    }
    if !net.is_connected() {
        return Err(ConductionError::SingularNetwork);
    }
    let n = net.node_count();
    let ext = net.exterior_node;
    let free: Vec<usize> = (0..n).filter(|&i| i != ext).collect();
    let index_of: Vec<Option<usize>> = {
        let mut m = vec![None; n];
        for (k, &i) in free.iter().enumerate() {
            m[i] = Some(k);
        }
        m
    };

    let m = free.len();
    let mut a = DMatrix::<f64>::zeros(m, m);
    for (k, &i) in free.iter().enumerate() {
        a[(k, k)] = net.node_capacitances[i] / dt;
    }
    // Conductance couplings to the pinned exterior node go to the RHS.
    let mut ext_coupling = vec![0.0; m];
    for &(p, q, g) in &net.conductances {
        for (u, v) in [(p, q), (q, p)] {
            if let Some(iu) = index_of[u] {
                a[(iu, iu)] += g;
                match index_of[v] {
                    Some(iv) => a[(iu, iv)] -= g,
                    None => ext_coupling[iu] += g,
                }
            }
        }
    }
    let lu = a.lu();

    let steps = (horizon / dt).round().max(1.0) as usize;
    let mut temps = vec![t_initial; n];
    let mut interior_surface = Vec::with_capacity(steps);
    let mut b = DVector::<f64>::zeros(m);

    for step in 0..steps {
        let t_end = (step + 1) as f64 * dt;
        let t_ext = exterior(t_end);
        for (k, &i) in free.iter().enumerate() {
            b[k] = net.node_capacitances[i] / dt * temps[i] + ext_coupling[k] * t_ext;
        }
        let x = lu.solve(&b).ok_or(ConductionError::SingularNetwork)?;
        for (k, &i) in free.iter().enumerate() {
            temps[i] = x[k];
        }
        temps[ext] = t_ext;
        interior_surface.push(temps[net.interior_node]);
    }

    Ok(TransientSolution {
        dt,
        interior_surface,
        final_profile: temps,
    })
}
