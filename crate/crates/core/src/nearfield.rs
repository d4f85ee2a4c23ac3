//! Evanescent near field of a uniformly moving electron.
//!
//! The dimensionless intensity is
//! `(α⁴/k²)·K0²(αρ) + (k_e²α²/k²)·K1²(αρ)`, the bracket that gets integrated
//! over a design region to give the geometric factor.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::bessel::{i0e, i1e, k01e};
use crate::numerics::{integrate_panels, QuadratureSpec};
use crate::physics::EvanescentScales;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldIntensitySample {
    pub rho: f64,
    pub value: f64,
}

fn weights(s: &EvanescentScales) -> (f64, f64) {
    let a2 = s.alpha_e * s.alpha_e;
    let k2 = s.k * s.k;
    (a2 * a2 / k2, s.k_e * s.k_e * a2 / k2)
}

/// Intensity at distance `rho` (same unit as `scales.lambda`).
pub fn intensity_factor(scales: &EvanescentScales, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("rho must be positive, got {rho}")));
    }
    Ok(intensity_factor_scaled(scales, rho) * (-2.0 * scales.alpha_e * rho).exp())
}

/// `intensity_factor · exp(2α_e ρ)`; finite for any ρ > 0.
pub fn intensity_factor_scaled(scales: &EvanescentScales, rho: f64) -> f64 {
    let (w0, w1) = weights(scales);
    let (k0, k1) = k01e(scales.alpha_e * rho);
    w0 * k0 * k0 + w1 * k1 * k1
}

pub fn sample(scales: &EvanescentScales, rho: f64) -> Result<FieldIntensitySample> {
    Ok(FieldIntensitySample {
        rho,
        value: intensity_factor(scales, rho)?,
    })
}

/// Gaussian-averaged K0 and radial K1 components at distance `r` from the
/// beam centre, for transverse density (2/(πσ²))·exp(−2r²/σ²).
///
/// The angular integral about the field point is done analytically, which
/// leaves smooth radial integrals:
/// `S0 = (4/σ²)∫ s K0(αs) e^{−2(r−s)²/σ²} Ĩ0(4rs/σ²) ds` and the same with
/// K1, Ĩ1 for the radial component (Ĩ = e^{−x}I).
pub fn gaussian_averages(scales: &EvanescentScales, sigma: f64, r: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radial position must be >= 0, got {r}")));
    }
    let a = scales.alpha_e;
    let inv = 1.0 / (sigma * sigma);
    // density tail beyond 6σ is below 1e-15 of the total
    let lo = (r - 6.0 * sigma).max(0.0);
    let hi = r + 6.0 * sigma;
    let mut pts = vec![lo];
    for &p in &[r - 2.0 * sigma, r - 0.5 * sigma, r, r + 0.5 * sigma, r + 2.0 * sigma] {
        if p > lo && p < hi {
            pts.push(p);
        }
    }
    // resolve the log/1/x behaviour of K near s = 0
    if lo == 0.0 {
        let mut q = 1e-3 / a;
        while q < hi {
            pts.push(q);
            q *= 8.0;
        }
    }
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let inner = spec.tightened(0.1);
    let s0 = integrate_panels(
        &|s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let g = (-2.0 * (r - s) * (r - s) * inv).exp() * i0e(4.0 * r * s * inv);
            let (k0, _) = k01e(a * s);
            s * k0 * (-a * s).exp() * g
        },
        &pts,
        &inner,
    )?;
    let v = if r == 0.0 {
        0.0
    } else {
        integrate_panels(
            &|s: f64| {
                if s <= 0.0 {
                    return 0.0;
                }
                let g = (-2.0 * (r - s) * (r - s) * inv).exp() * i1e(4.0 * r * s * inv);
                let (_, k1) = k01e(a * s);
                s * k1 * (-a * s).exp() * g
            },
            &pts,
            &inner,
        )?
    };
    Ok((4.0 * inv * s0, 4.0 * inv * v))
}

/// Gaussian-averaged intensity `(α⁴/k²)S0² + (k_e²α²/k²)|V|²` at distance
/// `r` from the beam centre (same unit as `scales.lambda`).
pub fn gaussian_intensity_factor(scales: &EvanescentScales, sigma: f64, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (s0, v) = gaussian_averages(scales, sigma, r, spec)?;
    let (w0, w1) = weights(scales);
    Ok(w0 * s0 * s0 + w1 * v * v)
}

/// Large-ρ asymptote of [`intensity_factor`].
pub fn intensity_asymptote(scales: &EvanescentScales, rho: f64) -> f64 {
    let (w0, w1) = weights(scales);
    let x = scales.alpha_e * rho;
    (PI / (2.0 * x)) * (-2.0 * x).exp() * (w0 + w1)
}
