//! Surface-plasmon mode of a cylindrical hole in a Drude metal.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{normalized, ModeCoefficients, ModeCoupling, ModeKind, ModeSolution, K};
use crate::bounds::coupling_bound;
use crate::error::{Error, Result};
use crate::materials::Material;
use crate::numerics::bessel::{i0e, i1e, k01e};
use crate::numerics::{find_root_bracketed, integrate_decaying, logspace, QuadratureSpec, RootBracket};
use crate::physics::{electron_from_beta, Length, ALPHA_FS};
use crate::regions::DesignRegion;

pub const SCAN_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetalHoleConfig {
    pub d: f64,
    pub omega_p_over_omega: f64,
}

impl MetalHoleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.d > 0.0 && self.d.is_finite()) {
            return Err(Error::Domain(format!("hole radius must be positive, got {}", self.d)));
        }
        if !(self.omega_p_over_omega > 1.0 && self.omega_p_over_omega.is_finite()) {
            return Err(Error::Domain(format!(
                "metal hole needs omega_p/omega > 1, got {}",
                self.omega_p_over_omega
            )));
        }
        Ok(())
    }

    /// ε(ω) = 1 − ω_p²/ω².
    pub fn eps(&self) -> f64 {
        1.0 - self.omega_p_over_omega * self.omega_p_over_omega
    }
}

fn terms(kz: f64, cfg: &MetalHoleConfig) -> (f64, f64) {
    let eps = cfg.eps();
    let alpha = (kz * kz - K * K).sqrt();
    let kappa = (kz * kz - eps * K * K).sqrt();
    let (k0, k1) = k01e(kappa * cfg.d);
    let ad = alpha * cfg.d;
    (i1e(ad) / i0e(ad) / alpha, eps / kappa * k1 / k0)
}

/// Normalised h_φ mismatch at ρ = d; zero on the dispersion curve.
/// `kz` in units where k = 2π.
pub fn metal_hole_residual(kz: f64, cfg: &MetalHoleConfig) -> f64 {
    let (t1, t2) = terms(kz, cfg);
    normalized(t1, t2)
}

fn build(kz: f64, cfg: &MetalHoleConfig, roots: &[f64]) -> ModeSolution {
    let eps = cfg.eps();
    ModeSolution {
        kind: ModeKind::MetalHole,
        k_z: kz / K,
        alpha: (kz * kz - K * K).sqrt() / K,
        kappa: (kz * kz - eps * K * K).sqrt() / K,
        coefficients: ModeCoefficients {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        },
        beta_match: K / kz,
        dispersion_residual: metal_hole_residual(kz, cfg).abs(),
        multi_root: roots.len() > 1,
        all_roots: roots.iter().map(|r| r / K).collect(),
        d: cfg.d,
        d2: None,
        eps,
    }
}

/// Every SPP root with k < k_z ≤ 1001·k, ordered by increasing k_z.
pub fn solve_metal_hole_all(cfg: &MetalHoleConfig) -> Result<Vec<ModeSolution>> {
    cfg.validate()?;
    let xs: Vec<f64> = logspace(-9.0, 3.0, SCAN_POINTS).into_iter().map(|t| K * (1.0 + t)).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| metal_hole_residual(x, cfg)).collect();
    let mut roots = Vec::new();
    for (w, v) in xs.windows(2).zip(vals.windows(2)) {
        if !(v[0].is_finite() && v[1].is_finite()) || v[0].signum() == v[1].signum() {
            continue;
        }
        let r = find_root_bracketed(|x| metal_hole_residual(x, cfg), RootBracket::new(w[0], w[1], 1e-15)?)?;
        if metal_hole_residual(r, cfg).abs() <= 1e-10 {
            roots.push(r);
        }
    }
    if roots.is_empty() {
        return Err(Error::NoMode(format!(
            "no SPP root for d={}, omega_p/omega={}",
            cfg.d, cfg.omega_p_over_omega
        )));
    }
    Ok(roots.iter().map(|&r| build(r, cfg, &roots)).collect())
}

/// The bound SPP root with the smallest k_z; `multi_root` flags the rest.
pub fn solve_metal_hole(cfg: &MetalHoleConfig) -> Result<ModeSolution> {
    Ok(solve_metal_hole_all(cfg)?.swap_remove(0))
}

/// Hole radius (λ units) at which the SPP branch reaches the light line,
/// for a metal of permittivity `eps` < 0. Below it, the light-line limit of
/// the dispersion relation, d/2 = −(ε/κ₀)·K1(κ₀d)/K0(κ₀d), has a solution
/// on the bound side.
pub fn light_line_radius(eps: f64) -> Result<f64> {
    if !(eps < 0.0 && eps.is_finite()) {
        return Err(Error::Domain(format!("light-line radius needs eps < 0, got {eps}")));
    }
    let kappa0 = K * (1.0 - eps).sqrt();
    let f = |d: f64| {
        let (k0, k1) = k01e(kappa0 * d);
        d / 2.0 + eps / kappa0 * k1 / k0
    };
    let lo = 1e-9;
    let mut hi = 1.0;
    while f(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::NoSignChange { lo, hi });
        }
    }
    find_root_bracketed(f, RootBracket::new(lo, hi, 1e-14)?)
}

/// Coupling per unit length for an on-axis electron at β_match, with the
/// full dispersive energy norm, and its ratio to the Drude bound on the
/// cylinder exterior.
pub fn coupling_metal_hole(mode: &ModeSolution, cfg: &MetalHoleConfig, spec: &QuadratureSpec) -> Result<ModeCoupling> {
    if mode.kind != ModeKind::MetalHole {
        return Err(Error::Domain("coupling_metal_hole needs a metal-hole mode".into()));
    }
    cfg.validate()?;
    let alpha = mode.alpha * K;
    let kappa = mode.kappa * K;
    let wp2 = cfg.omega_p_over_omega * cfg.omega_p_over_omega;
    let inner = integrate_decaying(
        |r| {
            let f = mode.fields_in_zone(0, r);
            PI * r * (f.e_z * f.e_z + f.e_rho * f.e_rho + f.h_phi * f.h_phi)
        },
        cfg.d,
        0.0,
        0.5 / alpha,
        spec,
    )?;
    let outer = integrate_decaying(
        |r| {
            let f = mode.fields_in_zone(1, r);
            let e2 = f.e_z * f.e_z + f.e_rho * f.e_rho;
            PI * r * (e2 + f.h_phi * f.h_phi + wp2 * e2)
        },
        cfg.d,
        f64::INFINITY,
        0.5 / kappa,
        spec,
    )?;
    let norm = inner + outer;
    if !(norm > 0.0) {
        return Err(Error::ZeroNormalization);
    }
    let ad = alpha * cfg.d;
    let ez0_scaled = 1.0 / i0e(ad);
    let g_scaled = ALPHA_FS * ez0_scaled * ez0_scaled / norm;
    let electron = electron_from_beta(mode.beta_match, None)?;
    let bound = coupling_bound(
        &Material::Drude {
            omega_p: cfg.omega_p_over_omega,
        },
        &DesignRegion::CylinderExterior { d: cfg.d },
        &electron,
        Length::Lambda(1.0),
        None,
        spec,
    )?;
    Ok(ModeCoupling {
        g_sq_per_length: g_scaled * (-2.0 * ad).exp(),
        ratio_to_bound: Some((g_scaled / bound.g_ub_sq_scaled).sqrt()),
        normalization_integral: norm,
        g_sq_per_length_scaled: g_scaled,
        bound: Some(bound),
    })
}
