//! Physical constants, electron kinematics, and evanescent scales.
//!
//! Lengths are expressed in units of the free-space wavelength λ unless a
//! [`Length::Meters`] tag says otherwise; dimensional constants only enter
//! through `alpha_fs` and the Compton wavelength.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 values (SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub q_e: f64,
    pub hbar: f64,
    pub eps0: f64,
    pub c: f64,
    pub m_e: f64,
    pub lambda_c: f64,
    pub alpha_fs: f64,
}

pub const CODATA: Constants = Constants {
    q_e: 1.602_176_634e-19,
    hbar: 1.054_571_817e-34,
    eps0: 8.854_187_812_8e-12,
    c: 299_792_458.0,
    m_e: 9.109_383_701_5e-31,
    lambda_c: 2.426_310_238_67e-12,
    alpha_fs: 7.297_352_569_3e-3,
};

pub const ALPHA_FS: f64 = CODATA.alpha_fs;
pub const COMPTON_WAVELENGTH: f64 = CODATA.lambda_c;

impl Constants {
    pub fn alpha_from_si(&self) -> f64 {
        self.q_e * self.q_e / (4.0 * PI * self.hbar * self.c * self.eps0)
    }

    pub fn compton_from_si(&self) -> f64 {
        2.0 * PI * self.hbar / (self.m_e * self.c)
    }

    /// Cross-checks the stored derived constants against the SI inputs.
    pub fn verify(&self) -> Result<()> {
        let da = (self.alpha_from_si() / self.alpha_fs - 1.0).abs();
        let dc = (self.compton_from_si() / self.lambda_c - 1.0).abs();
        if da > 1e-9 || dc > 1e-9 {
            return Err(Error::Domain(format!(
                "inconsistent constants: alpha mismatch {da:e}, Compton mismatch {dc:e}"
            )));
        }
        Ok(())
    }
}

/// A length tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Length {
    Lambda(f64),
    Meters(f64),
}

impl Length {
    pub fn raw(&self) -> f64 {
        match *self {
            Length::Lambda(v) | Length::Meters(v) => v,
        }
    }

    /// Value in units of λ; metric lengths need the wavelength in meters.
    pub fn in_lambda(&self, lambda_m: Option<f64>) -> Result<f64> {
        match *self {
            Length::Lambda(v) => Ok(v),
            Length::Meters(v) => {
                let lam = lambda_m.ok_or_else(|| Error::Missing("wavelength in meters to convert a metric length".into()))?;
                Ok(v / lam)
            }
        }
    }

    pub fn in_meters(&self, lambda_m: Option<f64>) -> Result<f64> {
        match *self {
            Length::Meters(v) => Ok(v),
            Length::Lambda(v) => {
                let lam = lambda_m.ok_or_else(|| Error::Missing("wavelength in meters to convert a length given in λ".into()))?;
                Ok(v * lam)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectronParams {
    pub beta: f64,
    pub gamma: f64,
    pub sigma: Option<Length>,
    /// λ_e/λ_C = 1/(γβ).
    pub de_broglie_over_compton: f64,
}

pub fn electron_from_beta(beta: f64, sigma: Option<Length>) -> Result<ElectronParams> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!("beta must lie in (0, 1), got {beta}")));
    }
    if let Some(s) = sigma {
        if !(s.raw() > 0.0 && s.raw().is_finite()) {
            return Err(Error::Domain(format!("sigma must be positive, got {}", s.raw())));
        }
    }
    let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
    Ok(ElectronParams {
        beta,
        gamma,
        sigma,
        de_broglie_over_compton: 1.0 / (gamma * beta),
    })
}

impl ElectronParams {
    pub fn with_sigma(self, sigma: Option<Length>) -> Result<Self> {
        electron_from_beta(self.beta, sigma)
    }
}

/// Near-field scales for one electron/frequency pair. `omega` is expressed
/// with c = 1 in the run's length unit, so it equals `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvanescentScales {
    pub lambda: f64,
    pub omega: f64,
    pub k: f64,
    pub k_e: f64,
    pub alpha_e: f64,
    pub beta: f64,
    pub gamma: f64,
}

pub fn evanescent_scales(electron: &ElectronParams, lambda: f64) -> Result<EvanescentScales> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    let k = 2.0 * PI / lambda;
    Ok(EvanescentScales {
        lambda,
        omega: k,
        k,
        k_e: k / electron.beta,
        alpha_e: k / (electron.gamma * electron.beta),
        beta: electron.beta,
        gamma: electron.gamma,
    })
}

impl EvanescentScales {
    /// Scales at unit wavelength, the internal convention.
    pub fn unit(beta: f64) -> Result<Self> {
        evanescent_scales(&electron_from_beta(beta, None)?, 1.0)
    }
}
