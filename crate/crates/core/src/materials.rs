//! Material response factors.
//!
//! Lorentz and Drude frequencies are in units of the mode frequency ω_m.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Material {
    NonDispersive { chi: f64 },
    Lorentz { eps_b: f64, omega_p: f64, omega_0: f64 },
    Drude { omega_p: f64 },
    LossyPoint { chi_re: f64, chi_im: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Nondispersive,
    Lorentz,
    Continuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialFactor {
    pub value: f64,
    pub bound_kind: BoundKind,
    /// 1 for the non-dispersive bound, 2 for the Lorentz/Drude bound.
    pub prefactor_multiplier: f64,
}

impl Material {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Material::NonDispersive { chi } if !(1.0 + chi > 0.0) => {
                Err(Error::Domain(format!("non-dispersive medium needs 1 + chi > 0, got chi={chi}")))
            }
            Material::Lorentz { eps_b, omega_p, omega_0 } if !(eps_b >= 1.0 && omega_p >= 0.0 && omega_0 >= 0.0) => {
                Err(Error::Domain(format!(
                    "Lorentz medium needs eps_b >= 1, omega_p >= 0, omega_0 >= 0 (got {eps_b}, {omega_p}, {omega_0})"
                )))
            }
            Material::Drude { omega_p } if !(omega_p > 0.0) => {
                Err(Error::Domain(format!("Drude medium needs omega_p > 0, got {omega_p}")))
            }
            Material::LossyPoint { chi_im, .. } if !(chi_im > 0.0) => {
                Err(Error::Domain(format!("lossy medium needs chi_im > 0, got {chi_im}")))
            }
            _ => Ok(()),
        }
    }

    /// Drude as the Lorentz model it abbreviates.
    pub fn as_lorentz(&self) -> Option<Material> {
        match *self {
            Material::Drude { omega_p } => Some(Material::Lorentz {
                eps_b: 1.0,
                omega_p,
                omega_0: 0.0,
            }),
            m @ Material::Lorentz { .. } => Some(m),
            _ => None,
        }
    }
}

/// χ²/(1+χ).
pub fn nondispersive_factor(chi: f64) -> Result<MaterialFactor> {
    Material::NonDispersive { chi }.validate()?;
    Ok(MaterialFactor {
        value: chi * chi / (1.0 + chi),
        bound_kind: BoundKind::Nondispersive,
        prefactor_multiplier: 1.0,
    })
}

/// `|χ_B + ε_B ω_p²/(ω_0²−ω²)|² / (ε_B + ε_B (ω_0²+ω²) ω_p²/(ω_0²−ω²)²)`.
/// Accepts `Lorentz` or `Drude`; the latter goes through the same path with
/// ε_B = 1, ω_0 = 0.
pub fn lorentz_factor(m: &Material, omega_m: f64) -> Result<MaterialFactor> {
    m.validate()?;
    let Some(Material::Lorentz { eps_b, omega_p, omega_0 }) = m.as_lorentz() else {
        return Err(Error::Domain("lorentz_factor needs a Lorentz or Drude material".into()));
    };
    let w2 = omega_m * omega_m;
    let w02 = omega_0 * omega_0;
    let det = w02 - w2;
    if det == 0.0 {
        return Err(Error::Pole(format!("mode frequency {omega_m} equals resonance {omega_0}")));
    }
    let wp2 = omega_p * omega_p;
    let chi_b = eps_b - 1.0;
    let num = chi_b + eps_b * wp2 / det;
    let den = eps_b + eps_b * (w02 + w2) * wp2 / (det * det);
    Ok(MaterialFactor {
        value: num * num / den,
        bound_kind: BoundKind::Lorentz,
        prefactor_multiplier: 2.0,
    })
}

/// |χ|²/χ_I.
pub fn continuum_factor(m: &Material) -> Result<MaterialFactor> {
    m.validate()?;
    let Material::LossyPoint { chi_re, chi_im } = *m else {
        return Err(Error::Domain("continuum_factor needs a lossy_point material".into()));
    };
    Ok(MaterialFactor {
        value: (chi_re * chi_re + chi_im * chi_im) / chi_im,
        bound_kind: BoundKind::Continuum,
        prefactor_multiplier: 1.0,
    })
}

/// Factor for a discrete-mode bound at the mode frequency (ω_m = 1).
pub fn mode_bound_factor(m: &Material) -> Result<MaterialFactor> {
    match m {
        Material::NonDispersive { chi } => nondispersive_factor(*chi),
        Material::Lorentz { .. } | Material::Drude { .. } => lorentz_factor(m, 1.0),
        Material::LossyPoint { .. } => Err(Error::Domain(
            "lossy_point materials bound the continuum spectrum; use continuum_bound_density".into(),
        )),
    }
}
