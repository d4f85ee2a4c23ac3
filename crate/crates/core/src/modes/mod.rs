//! Guided-mode solvers and their coupling to an on-axis electron.
//!
//! Units: λ = 1, so k = 2π. Fields are normalised so that e_z = 1 at the
//! first interface ρ = d. e_ρ and h_φ are in quadrature with e_z; the stored
//! numbers are the coefficients of i.

pub mod hollow_core;
pub mod imported;
pub mod metal_hole;

use serde::{Deserialize, Serialize};

use crate::bounds::CouplingBound;

pub use hollow_core::{coupling_hollow_core, hollow_core_residual, solve_hollow_core, solve_hollow_core_all, HollowCoreConfig};
pub use imported::{coupling_from_imported_mode, ImportedCoupling, ImportedModeProfile, ProfileHeader};
pub use metal_hole::{
    coupling_metal_hole, light_line_radius, metal_hole_residual, solve_metal_hole, solve_metal_hole_all, MetalHoleConfig,
};

pub(crate) const K: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    HollowCore,
    MetalHole,
}

/// Interface amplitudes. Hollow core: e_z = A·I0(αρ)/I0(αd) inside,
/// B·Y0(κρ) + C·J0(κρ) in the shell, D·K0(αρ)/K0(αd2) outside. Metal hole:
/// A inside, D·K0(κρ)/K0(κd) in the metal, B = C = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSolution {
    pub kind: ModeKind,
    /// k_z/k.
    pub k_z: f64,
    /// √(k_z² − k²)/k.
    pub alpha: f64,
    /// Transverse constant in the medium, over k.
    pub kappa: f64,
    pub coefficients: ModeCoefficients,
    /// k/k_z, the phase-matched electron velocity.
    pub beta_match: f64,
    pub dispersion_residual: f64,
    /// More than one root was found; `all_roots` lists every k_z/k.
    pub multi_root: bool,
    pub all_roots: Vec<f64>,
    /// Radii in λ and the medium permittivity (ε(ω) for the metal).
    pub d: f64,
    pub d2: Option<f64>,
    pub eps: f64,
}

/// e_z and the i-coefficients of e_ρ and h_φ at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub e_z: f64,
    pub e_rho: f64,
    pub h_phi: f64,
}

impl FieldSample {
    /// From e_z and its radial derivative in a zone with permittivity `eps`
    /// and transverse wavenumber² `kt2 = εk² − k_z²`.
    pub(crate) fn from_derivative(e_z: f64, de_z: f64, eps: f64, kz: f64, kt2: f64) -> Self {
        Self {
            e_z,
            e_rho: kz * de_z / kt2,
            h_phi: K * eps * de_z / kt2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeCoupling {
    /// |g|²/(L/λ).
    pub g_sq_per_length: f64,
    /// |g|/g_ub, when a bound is available.
    pub ratio_to_bound: Option<f64>,
    pub normalization_integral: f64,
    /// `g_sq_per_length · exp(2αd)`; survives when the plain value underflows.
    pub g_sq_per_length_scaled: f64,
    pub bound: Option<CouplingBound>,
}

impl ModeCoupling {
    /// |g|/√(L/λ).
    pub fn g_per_sqrt_length(&self) -> f64 {
        self.g_sq_per_length.sqrt()
    }
}

/// Normalised residual (t1 + t2)/(|t1| + |t2|).
pub(crate) fn normalized(t1: f64, t2: f64) -> f64 {
    let s = t1.abs() + t2.abs();
    if s == 0.0 {
        0.0
    } else {
        (t1 + t2) / s
    }
}
