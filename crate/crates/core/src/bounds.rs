//! Upper bounds on the coupling coefficient.
//!
//! `g_ub² = (α_fs × multiplier) × material × (kL/2π × duty) × g_geo²`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{continuum_factor, mode_bound_factor, Material};
use crate::numerics::QuadratureSpec;
use crate::physics::{evanescent_scales, ElectronParams, Length, ALPHA_FS, COMPTON_WAVELENGTH};
use crate::regions::{geometric_factor_auto, DesignRegion, GeometricFactor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundComponents {
    pub prefactor: f64,
    pub material: f64,
    pub length_term: f64,
    pub geo: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingBound {
    pub g_ub_sq: f64,
    pub components: BoundComponents,
    /// g_ub²/(L/λ).
    pub per_unit_length: f64,
    /// `g_ub_sq · exp(2α_e d)`, for ratios when `g_ub_sq` underflows.
    pub g_ub_sq_scaled: f64,
    pub geometric: GeometricFactor,
}

impl CouplingBound {
    pub fn g_ub(&self) -> f64 {
        self.g_ub_sq.sqrt()
    }

    /// g_ub/√(L/λ).
    pub fn g_ub_per_sqrt_length(&self) -> f64 {
        self.per_unit_length.sqrt()
    }
}

fn sigma_over_lambda(electron: &ElectronParams, lambda_m: Option<f64>) -> Result<Option<f64>> {
    electron.sigma.map(|s| s.in_lambda(lambda_m)).transpose()
}

/// Bound for a discrete mode of interaction length `length`.
/// `lambda_m` is only needed when some length is given in meters.
pub fn coupling_bound(
    material: &Material,
    region: &DesignRegion,
    electron: &ElectronParams,
    length: Length,
    lambda_m: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<CouplingBound> {
    let l = length.in_lambda(lambda_m)?;
    if !(l >= 0.0 && l.is_finite()) {
        return Err(Error::Domain(format!("interaction length must be >= 0, got {l}")));
    }
    let factor = mode_bound_factor(material)?;
    let scales = evanescent_scales(electron, 1.0)?;
    let geo = geometric_factor_auto(region, &scales, sigma_over_lambda(electron, lambda_m)?, spec)?;
    let prefactor = ALPHA_FS * factor.prefactor_multiplier;
    let per_length_term = region.duty();
    let components = BoundComponents {
        prefactor,
        material: factor.value,
        length_term: l * per_length_term,
        geo: geo.value,
    };
    let unit = prefactor * factor.value * per_length_term;
    Ok(CouplingBound {
        g_ub_sq: unit * l * geo.value,
        components,
        per_unit_length: unit * geo.value,
        g_ub_sq_scaled: unit * l * geo.value_scaled,
        geometric: geo,
    })
}

/// Spectral density bound `α_fs (2/(πω)) (|χ|²/χ_I) (kL/2π) g_geo²` for a
/// lossy medium, with ω in the caller's frequency unit.
pub fn continuum_bound_density(
    material: &Material,
    region: &DesignRegion,
    electron: &ElectronParams,
    length: Length,
    lambda_m: Option<f64>,
    omega: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    let l = length.in_lambda(lambda_m)?;
    if !(l >= 0.0) {
        return Err(Error::Domain(format!("interaction length must be >= 0, got {l}")));
    }
    let factor = continuum_factor(material)?;
    let scales = evanescent_scales(electron, 1.0)?;
    let geo = geometric_factor_auto(region, &scales, sigma_over_lambda(electron, lambda_m)?, spec)?;
    Ok(ALPHA_FS * (2.0 / (PI * omega)) * factor.value * (l * region.duty()) * geo.value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionLimit {
    /// Divergence half-angle λ_e/(πσ) in radians.
    pub theta: f64,
    pub l_max_m: f64,
    /// L_max/λ when the wavelength is known.
    pub l_max_lambda: Option<f64>,
    /// Bound evaluated at L = L_max, filled by [`with_ultimate_bound`].
    pub ultimate_g_ub_sq: Option<f64>,
}

/// Diffraction-limited interaction length `2πγβ d σ/λ_C`.
pub fn max_interaction_length(electron: &ElectronParams, d: Length, lambda_m: Option<f64>) -> Result<InteractionLimit> {
    let sigma = electron
        .sigma
        .ok_or_else(|| Error::Missing("electron beam waist sigma".into()))?
        .in_meters(lambda_m)?;
    let d_m = d.in_meters(lambda_m)?;
    if !(d_m > 0.0) {
        return Err(Error::Domain(format!("separation must be positive, got {d_m}")));
    }
    let lambda_e = COMPTON_WAVELENGTH / (electron.gamma * electron.beta);
    let theta = lambda_e / (PI * sigma);
    let l_max_m = 2.0 * PI * electron.gamma * electron.beta * d_m * sigma / COMPTON_WAVELENGTH;
    Ok(InteractionLimit {
        theta,
        l_max_m,
        l_max_lambda: lambda_m.map(|l| l_max_m / l),
        ultimate_g_ub_sq: None,
    })
}

/// Fills `ultimate_g_ub_sq` by evaluating the bound at L = L_max.
pub fn with_ultimate_bound(
    mut limit: InteractionLimit,
    material: &Material,
    region: &DesignRegion,
    electron: &ElectronParams,
    lambda_m: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<InteractionLimit> {
    let b = coupling_bound(material, region, electron, Length::Meters(limit.l_max_m), lambda_m, spec)?;
    limit.ultimate_g_ub_sq = Some(b.g_ub_sq);
    Ok(limit)
}
