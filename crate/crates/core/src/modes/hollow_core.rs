//! TM₀₁ mode of a dielectric tube (hollow-core waveguide).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{normalized, FieldSample, ModeCoefficients, ModeCoupling, ModeKind, ModeSolution, K};
use crate::bounds::coupling_bound;
use crate::error::{Error, Result};
use crate::materials::Material;
use crate::numerics::bessel::{i0e, i1e, jy01, k01e};
use crate::numerics::{find_root_bracketed, integrate_decaying, integrate_panels, linspace, QuadratureSpec, RootBracket};
use crate::physics::{electron_from_beta, Length, ALPHA_FS};
use crate::regions::DesignRegion;

pub const SCAN_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HollowCoreConfig {
    pub d: f64,
    pub d2: f64,
    pub eps: f64,
}

impl HollowCoreConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.d > 0.0 && self.d2 > self.d && self.d2.is_finite()) {
            return Err(Error::Domain(format!(
                "hollow core needs 0 < d < d2, got d={}, d2={}",
                self.d, self.d2
            )));
        }
        if !(self.eps > 1.0 && self.eps.is_finite()) {
            return Err(Error::Domain(format!("hollow core needs eps > 1, got {}", self.eps)));
        }
        Ok(())
    }
}

struct Shell {
    alpha: f64,
    kappa: f64,
    b: f64,
    c: f64,
}

// Shell amplitudes from e_z and h_φ continuity at ρ = d with A = 1.
fn shell(kz: f64, cfg: &HollowCoreConfig) -> Shell {
    let alpha = (kz * kz - K * K).sqrt();
    let kappa = (cfg.eps * K * K - kz * kz).sqrt();
    let ad = alpha * cfg.d;
    let ri = i1e(ad) / i0e(ad);
    let q = kappa * ri / (cfg.eps * alpha);
    let (j0, j1, y0, y1) = jy01(kappa * cfg.d);
    // Y0 J1 − J0 Y1 = 2/(πκd), never zero
    let det = y0 * j1 - j0 * y1;
    Shell {
        alpha,
        kappa,
        b: (j1 - j0 * q) / det,
        c: (y0 * q - y1) / det,
    }
}

fn residual_terms(kz: f64, cfg: &HollowCoreConfig) -> (f64, f64, f64) {
    let s = shell(kz, cfg);
    let (j0, j1, y0, y1) = jy01(s.kappa * cfg.d2);
    let (k0, k1) = k01e(s.alpha * cfg.d2);
    let dcoef = s.b * y0 + s.c * j0;
    let t1 = cfg.eps / s.kappa * (s.b * y1 + s.c * j1);
    let t2 = (k1 / k0) / s.alpha * dcoef;
    (t1, t2, dcoef)
}

/// Normalised h_φ mismatch at ρ = d2; zero on the dispersion curve.
/// `kz` in units where k = 2π.
pub fn hollow_core_residual(kz: f64, cfg: &HollowCoreConfig) -> f64 {
    let (t1, t2, _) = residual_terms(kz, cfg);
    normalized(t1, t2)
}

fn build(kz: f64, cfg: &HollowCoreConfig, roots: &[f64]) -> ModeSolution {
    let s = shell(kz, cfg);
    let (_, _, dcoef) = residual_terms(kz, cfg);
    ModeSolution {
        kind: ModeKind::HollowCore,
        k_z: kz / K,
        alpha: s.alpha / K,
        kappa: s.kappa / K,
        coefficients: ModeCoefficients {
            a: 1.0,
            b: s.b,
            c: s.c,
            d: dcoef,
        },
        beta_match: K / kz,
        dispersion_residual: hollow_core_residual(kz, cfg).abs(),
        multi_root: roots.len() > 1,
        all_roots: roots.iter().map(|r| r / K).collect(),
        d: cfg.d,
        d2: Some(cfg.d2),
        eps: cfg.eps,
    }
}

/// Every TM₀₁-family root in (k, √ε·k), ordered by decreasing k_z.
pub fn solve_hollow_core_all(cfg: &HollowCoreConfig) -> Result<Vec<ModeSolution>> {
    cfg.validate()?;
    let lo = K * (1.0 + 1e-12);
    let hi = cfg.eps.sqrt() * K * (1.0 - 1e-12);
    if !(hi > lo) {
        return Err(Error::NoMode(format!("eps={} leaves no guiding window", cfg.eps)));
    }
    let xs = linspace(lo, hi, SCAN_POINTS);
    let vals: Vec<f64> = xs.iter().map(|&x| hollow_core_residual(x, cfg)).collect();
    let mut roots = Vec::new();
    for (w, v) in xs.windows(2).zip(vals.windows(2)) {
        if !(v[0].is_finite() && v[1].is_finite()) || v[0].signum() == v[1].signum() {
            continue;
        }
        let r = find_root_bracketed(|x| hollow_core_residual(x, cfg), RootBracket::new(w[0], w[1], 1e-15)?)?;
        if hollow_core_residual(r, cfg).abs() <= 1e-10 {
            roots.push(r);
        }
    }
    if roots.is_empty() {
        return Err(Error::NoMode(format!(
            "no TM01 root for d={}, d2={}, eps={}",
            cfg.d, cfg.d2, cfg.eps
        )));
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots.iter().map(|&r| build(r, cfg, &roots)).collect())
}

/// The fundamental TM₀₁ mode: the root with the largest k_z (fewest radial
/// nodes in the shell). `multi_root` flags higher-order companions.
pub fn solve_hollow_core(cfg: &HollowCoreConfig) -> Result<ModeSolution> {
    Ok(solve_hollow_core_all(cfg)?.swap_remove(0))
}

impl ModeSolution {
    /// Field sample in `zone` (0 = inside, 1 = shell or metal, 2 = outside)
    /// at radius `rho` (λ units). Zones may be evaluated beyond their range,
    /// which is how interface continuity is checked.
    pub fn fields_in_zone(&self, zone: usize, rho: f64) -> FieldSample {
        let kz = self.k_z * K;
        let alpha = self.alpha * K;
        let kappa = self.kappa * K;
        let c = self.coefficients;
        match (self.kind, zone) {
            (_, 0) => {
                let ad = alpha * self.d;
                let ar = alpha * rho;
                let scale = (ar - ad).exp() / i0e(ad);
                let e_z = c.a * i0e(ar) * scale;
                let de = c.a * alpha * i1e(ar) * scale;
                FieldSample::from_derivative(e_z, de, 1.0, kz, -alpha * alpha)
            }
            (ModeKind::HollowCore, 1) => {
                let (j0, j1, y0, y1) = jy01(kappa * rho);
                let e_z = c.b * y0 + c.c * j0;
                let de = -kappa * (c.b * y1 + c.c * j1);
                FieldSample::from_derivative(e_z, de, self.eps, kz, kappa * kappa)
            }
            (ModeKind::HollowCore, _) => {
                let d2 = self.d2.expect("hollow core has d2");
                let (k0r, k1r) = k01e(alpha * rho);
                let (k0d, _) = k01e(alpha * d2);
                let scale = c.d * (-alpha * (rho - d2)).exp() / k0d;
                FieldSample::from_derivative(k0r * scale, -alpha * k1r * scale, 1.0, kz, -alpha * alpha)
            }
            (ModeKind::MetalHole, _) => {
                let (k0r, k1r) = k01e(kappa * rho);
                let (k0d, _) = k01e(kappa * self.d);
                let scale = c.d * (-kappa * (rho - self.d)).exp() / k0d;
                FieldSample::from_derivative(k0r * scale, -kappa * k1r * scale, self.eps, kz, -kappa * kappa)
            }
        }
    }

    /// Fields at radius `rho`, choosing the zone that contains it.
    pub fn fields(&self, rho: f64) -> FieldSample {
        let zone = if rho < self.d {
            0
        } else {
            match self.d2 {
                Some(d2) if rho < d2 => 1,
                Some(_) => 2,
                None => 1,
            }
        };
        self.fields_in_zone(zone, rho)
    }

    /// Largest relative mismatch of e_z and h_φ across the interfaces.
    pub fn interface_mismatch(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
        let mut worst: f64 = 0.0;
        let mut check = |z0: usize, z1: usize, r: f64| {
            let a = self.fields_in_zone(z0, r);
            let b = self.fields_in_zone(z1, r);
            worst = worst.max(rel(a.e_z, b.e_z)).max(rel(a.h_phi, b.h_phi));
        };
        check(0, 1, self.d);
        if let Some(d2) = self.d2 {
            check(1, 2, d2);
        }
        worst
    }

    /// ln e_z(0) = −ln I0(αd) for the A = 1 normalisation.
    pub fn ln_e_z_axis(&self) -> f64 {
        let ad = self.alpha * K * self.d;
        -(ad + i0e(ad).ln())
    }
}

fn shell_breaks(a: f64, b: f64, kappa: f64) -> Vec<f64> {
    let n = (((b - a) * kappa / PI).ceil() as usize).clamp(1, 10_000) + 1;
    linspace(a, b, n + 1)
}

/// Coupling per unit length for an on-axis electron at β_match, and its
/// ratio to the non-dispersive annulus bound.
pub fn coupling_hollow_core(mode: &ModeSolution, cfg: &HollowCoreConfig, spec: &QuadratureSpec) -> Result<ModeCoupling> {
    if mode.kind != ModeKind::HollowCore {
        return Err(Error::Domain("coupling_hollow_core needs a hollow-core mode".into()));
    }
    cfg.validate()?;
    let alpha = mode.alpha * K;
    let kappa = mode.kappa * K;
    let energy = |zone: usize, eps: f64| {
        move |r: f64| {
            let f = mode.fields_in_zone(zone, r);
            2.0 * PI * r * eps * (f.e_z * f.e_z + f.e_rho * f.e_rho)
        }
    };
    let inner = integrate_decaying(energy(0, 1.0), cfg.d, 0.0, 0.5 / alpha, spec)?;
    let middle = integrate_panels(&energy(1, cfg.eps), &shell_breaks(cfg.d, cfg.d2, kappa), spec)?;
    let outer = integrate_decaying(energy(2, 1.0), cfg.d2, f64::INFINITY, 0.5 / alpha, spec)?;
    let norm = inner + middle + outer;
    if !(norm > 0.0) {
        return Err(Error::ZeroNormalization);
    }
    let ad = alpha * cfg.d;
    let ez0_scaled = 1.0 / i0e(ad);
    let g_scaled = ALPHA_FS * ez0_scaled * ez0_scaled / norm;
    let electron = electron_from_beta(mode.beta_match, None)?;
    let bound = coupling_bound(
        &Material::NonDispersive { chi: cfg.eps - 1.0 },
        &DesignRegion::Annulus { d: cfg.d, d2: cfg.d2 },
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
