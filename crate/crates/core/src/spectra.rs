//! Mode-decomposed loss spectrum and the effective number of coupled modes.
//!
//! `sinc(x) = sin(x)/x` with `sinc(0) = 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate, integrate_panels, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZProfile {
    pub u0: f64,
    pub k_m: f64,
    /// Extent L of the segment [−L/2, L/2].
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMode {
    pub omega_m: f64,
    pub gamma_d: f64,
    pub z_profile: ZProfile,
    pub g_m_sq: f64,
}

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Lorentzian `(1/π)(γ/2)/((ω−ω_m)² + γ²/4)`, unit area.
pub fn lorentzian(omega: f64, omega_m: f64, gamma: f64) -> f64 {
    let dw = omega - omega_m;
    (0.5 * gamma / PI) / (dw * dw + 0.25 * gamma * gamma)
}

impl SpectrumMode {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_m > 0.0 && self.gamma_d > 0.0) {
            return Err(Error::Domain(format!(
                "mode needs omega_m > 0 and gamma_d > 0, got {} and {}",
                self.omega_m, self.gamma_d
            )));
        }
        if self.gamma_d / self.omega_m > 1e-2 {
            return Err(Error::Domain(format!(
                "gamma_d/omega_m = {} exceeds 1e-2; the Lorentzian form no longer applies",
                self.gamma_d / self.omega_m
            )));
        }
        if !(self.g_m_sq >= 0.0 && self.z_profile.length > 0.0) {
            return Err(Error::Domain("mode needs g_m_sq >= 0 and a positive z extent".into()));
        }
        Ok(())
    }

    /// ∫ e^{−iωz/v} U(z) dz over the segment.
    pub fn overlap(&self, omega: f64, v: f64) -> f64 {
        let p = &self.z_profile;
        p.u0 * p.length * sinc((p.k_m - omega / v) * p.length / 2.0)
    }

    fn density(&self, omega: f64, v: f64) -> Result<f64> {
        if self.g_m_sq == 0.0 {
            return Ok(0.0);
        }
        let z_m = self.overlap(self.omega_m, v);
        // a node of the sinc counts as zero overlap
        if z_m.abs() <= 1e-12 * (self.z_profile.u0 * self.z_profile.length).abs() {
            return Err(Error::Domain(format!(
                "mode at omega_m = {} has zero overlap with the electron at its own frequency",
                self.omega_m
            )));
        }
        let z = self.overlap(omega, v);
        Ok(self.g_m_sq * (z * z) / (z_m * z_m) * lorentzian(omega, self.omega_m, self.gamma_d))
    }
}

/// |g(ω)|² per unit angular frequency; each mode's weight is scaled so that
/// it integrates to `g_m_sq` across its own peak.
pub fn spectrum_density(modes: &[SpectrumMode], omega: f64, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::Domain(format!("electron velocity must be positive, got {v}")));
    }
    let mut total = 0.0;
    for m in modes {
        m.validate()?;
        total += m.density(omega, v)?;
    }
    Ok(total)
}

/// ∫ |g(ω)|² dω over [ω_m − δω/2, ω_m + δω/2].
pub fn peak_integral(modes: &[SpectrumMode], m_index: usize, delta_omega: f64, v: f64, spec: &QuadratureSpec) -> Result<f64> {
    let m = modes
        .get(m_index)
        .ok_or_else(|| Error::Domain(format!("mode index {m_index} out of range ({} modes)", modes.len())))?;
    m.validate()?;
    if !(delta_omega > 0.0) {
        return Err(Error::Domain(format!("bandwidth must be positive, got {delta_omega}")));
    }
    let (lo, hi) = (m.omega_m - delta_omega / 2.0, m.omega_m + delta_omega / 2.0);
    if let Some((j, o)) = modes
        .iter()
        .enumerate()
        .find(|(j, o)| *j != m_index && o.omega_m >= lo && o.omega_m <= hi)
    {
        return Err(Error::BandwidthOverlap(format!(
            "mode {j} at omega = {} lies inside the window [{lo}, {hi}]",
            o.omega_m
        )));
    }
    let mut breaks = vec![lo];
    for s in [-50.0, -10.0, -2.0, -0.5, 0.0, 0.5, 2.0, 10.0, 50.0] {
        let w = m.omega_m + s * m.gamma_d;
        if w > lo && w < hi {
            breaks.push(w);
        }
    }
    breaks.push(hi);
    // failures do not depend on ω, so one check covers the whole window
    spectrum_density(modes, m.omega_m, v)?;
    let f = |w: f64| spectrum_density(modes, w, v).unwrap_or(0.0);
    integrate_panels(&f, &breaks, spec)
}

/// ω(k) = ω0 + v_g(k−k0) + ½ω''(k−k0)² + ⅙ω'''(k−k0)³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionModel {
    pub k0: f64,
    pub omega0: f64,
    pub v_g: f64,
    pub d2w_dk2: f64,
    pub d3w_dk3: f64,
}

impl DispersionModel {
    pub fn omega(&self, k: f64) -> f64 {
        let q = k - self.k0;
        self.omega0 + q * (self.v_g + q * (self.d2w_dk2 / 2.0 + q * self.d3w_dk3 / 6.0))
    }

    /// Phase-mismatch polynomial a1·x + a2·x² + a3·x³ in x = (k−k0)L/2.
    fn phase_coefficients(&self, v: f64, length: f64) -> Result<[f64; 3]> {
        if !(v > 0.0 && length > 0.0) {
            return Err(Error::Domain(format!("need v > 0 and L > 0, got v={v}, L={length}")));
        }
        let mismatch = (self.omega0 - v * self.k0).abs();
        if mismatch > 1e-9 * self.omega0.abs().max(v * self.k0.abs()) {
            return Err(Error::Domain(format!(
                "model is not phase matched: omega0 = {}, v*k0 = {}",
                self.omega0,
                v * self.k0
            )));
        }
        let s = 2.0 / length;
        Ok([1.0 - self.v_g / v, -(self.d2w_dk2 / (2.0 * v)) * s, -(self.d3w_dk3 / (6.0 * v)) * s * s])
    }
}

/// Smallest root of ψ'(x) along `dir` beyond `x` (in |x|), if any.
fn next_stationary(a: [f64; 3], dir: f64, x: f64) -> Option<f64> {
    // ψ'(dir·s) = a1 + 2a2·dir·s + 3a3·s²
    let (c0, c1, c2) = (a[0], 2.0 * a[1] * dir, 3.0 * a[2]);
    let mut roots = Vec::new();
    if c2 == 0.0 {
        if c1 != 0.0 {
            roots.push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
            roots.push(q / c2);
            if q != 0.0 {
                roots.push(c0 / q);
            }
        }
    }
    roots.into_iter().filter(|&s| s > x).min_by(f64::total_cmp)
}

/// Smallest x > 0 with |a1|x + |a2|x² + |a3|x³ = target.
fn width_at(a: [f64; 3], target: f64) -> f64 {
    let g = |x: f64| a[0].abs() * x + a[1].abs() * x * x + a[2].abs() * x * x * x - target;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

const PSI_CUTOFF: f64 = 2000.0;

/// (1/π)∫ sinc²(ψ(x)) dx over one half-line, `dir` = ±1.
///
/// The integral runs out to the first |ψ| ≥ 2000 and adds the averaged
/// tail up to the next stationary point of ψ. Crossings of the phase-matching
/// line further out are artefacts of the truncated expansion and excluded.
fn half_line(a: [f64; 3], dir: f64, spec: &QuadratureSpec) -> Result<f64> {
    let psi = |x: f64| x * (a[0] + x * (a[1] + x * a[2]));
    let dpsi = |x: f64| a[0] + x * (2.0 * a[1] + 3.0 * x * a[2]);
    let f = |x: f64| {
        let s = sinc(psi(x));
        s * s
    };
    let scale = width_at(a, 1.0);
    let mut x = 0.0_f64;
    let mut total = 0.0;
    let mut breaks = vec![0.0];
    loop {
        let w = (PI / dpsi(dir * x).abs()).min(0.5 * scale);
        x += w;
        breaks.push(dir * x);
        if psi(dir * x).abs() >= PSI_CUTOFF {
            break;
        }
        if breaks.len() > 2_000_000 {
            return Err(Error::QuadratureNoConvergence {
                estimate: f64::NAN,
                tolerance: spec.relative_tolerance,
            });
        }
    }
    if dir < 0.0 {
        breaks.reverse();
    }
    total += integrate_panels(&f, &breaks, spec)?;
    // beyond the cutoff sinc² averages to 1/(2ψ²); with t = 1/x this is
    // ½∫ t⁴/(a1 t² + a2 t + a3)² dt over (1/x_s, 1/X]
    let t_end = next_stationary(a, dir, x).map_or(0.0, |s| 1.0 / s);
    let tail = integrate(
        |t: f64| {
            let t = dir * t;
            let q = t * t / (a[0] * t * t + a[1] * t + a[2]);
            0.5 * q * q
        },
        t_end,
        1.0 / x,
        spec,
    )?;
    Ok((total + tail) / PI)
}

/// N_eff = (L/2π)∫ sinc²[(k − ω(k)/v)L/2] dk, evaluated numerically.
pub fn n_eff_numeric(model: &DispersionModel, v: f64, length: f64, spec: &QuadratureSpec) -> Result<f64> {
    let a = model.phase_coefficients(v, length)?;
    if a.iter().all(|&c| c == 0.0) {
        return Err(Error::Domain("phase mismatch vanishes identically; N_eff diverges".into()));
    }
    Ok(half_line(a, 1.0, spec)? + half_line(a, -1.0, spec)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NEffRegime {
    Linear,
    Quadratic,
    Cubic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NEffClosed {
    pub value: f64,
    pub regime: NEffRegime,
    /// |a1|x*, |a2|x*², |a3|x*³ at the width where sinc² falls to 1e-3.
    pub term_magnitudes: [f64; 3],
}

pub const REGIME_DOMINANCE: f64 = 30.0;

/// Closed-form N_eff for whichever expansion term dominates.
pub fn n_eff_closed(model: &DispersionModel, v: f64, length: f64) -> Result<NEffClosed> {
    let a = model.phase_coefficients(v, length)?;
    if a.iter().all(|&c| c == 0.0) {
        return Err(Error::Domain("phase mismatch vanishes identically; N_eff diverges".into()));
    }
    let x = width_at(a, 1000f64.sqrt());
    let terms = [a[0].abs() * x, a[1].abs() * x * x, a[2].abs() * x * x * x];
    let (i, &top) = terms
        .iter()
        .enumerate()
        .max_by(|p, q| p.1.total_cmp(q.1))
        .expect("three terms");
    if terms.iter().enumerate().any(|(j, &t)| j != i && t * REGIME_DOMINANCE > top) {
        return Err(Error::AmbiguousRegime(format!(
            "expansion terms {:.3e}, {:.3e}, {:.3e}: none dominates by {REGIME_DOMINANCE}x",
            terms[0], terms[1], terms[2]
        )));
    }
    let (value, regime) = match i {
        0 => (1.0 / a[0].abs(), NEffRegime::Linear),
        1 => (
            4.0 / (3.0 * PI.sqrt()) * (model.d2w_dk2 / v).abs().powf(-0.5) * length.sqrt(),
            NEffRegime::Quadratic,
        ),
        _ => (
            0.8 * (model.d3w_dk3 / v).abs().powf(-1.0 / 3.0) * length.powf(2.0 / 3.0),
            NEffRegime::Cubic,
        ),
    };
    Ok(NEffClosed {
        value,
        regime,
        term_magnitudes: terms,
    })
}
