//! Coupling from a mode profile computed elsewhere (e.g. a full-wave solver).
//!
//! File layout: one JSON header line
//! `{"nx":..,"ny":..,"dx_over_lambda":..,"dy_over_lambda":..,"omega_hz":..,"kz_over_k":..,"origin":[x0,y0]}`
//! then `nx·ny` rows `ix, iy, Re(Ex), Im(Ex), Re(Ey), Im(Ey), Re(Ez), Im(Ez), eps`,
//! row-major with `ix` fastest. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModeCoupling;
use crate::bounds::coupling_bound;
use crate::error::{Error, Result};
use crate::materials::Material;
use crate::numerics::QuadratureSpec;
use crate::physics::{ElectronParams, Length, ALPHA_FS};
use crate::regions::DesignRegion;

/// Relative phase mismatch |k_z/k − 1/β|·β above which a warning is raised.
pub const PHASE_WARNING_THRESHOLD: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileHeader {
    pub nx: usize,
    pub ny: usize,
    pub dx_over_lambda: f64,
    pub dy_over_lambda: f64,
    pub omega_hz: f64,
    pub kz_over_k: f64,
    /// Position of node (0, 0) in λ.
    #[serde(default)]
    pub origin: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportedModeProfile {
    pub header: ProfileHeader,
    /// (Ex, Ey, Ez) per node, index `iy·nx + ix`.
    pub fields: Vec<[Complex64; 3]>,
    pub eps_map: Vec<f64>,
    /// Transverse electron position in λ.
    pub electron_position: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportedCoupling {
    pub coupling: ModeCoupling,
    /// |W_z| interpolated at the electron.
    pub w_z_abs: f64,
    pub phase_mismatch: f64,
    pub warning: Option<String>,
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("mode profile line {line}: {msg}"))
}

impl ImportedModeProfile {
    pub fn validate(&self) -> Result<()> {
        let h = &self.header;
        if h.nx < 2 || h.ny < 2 {
            return Err(Error::Domain(format!("grid needs at least 2x2 nodes, got {}x{}", h.nx, h.ny)));
        }
        if !(h.dx_over_lambda > 0.0 && h.dy_over_lambda > 0.0) {
            return Err(Error::Domain("grid spacing must be positive".into()));
        }
        let n = h.nx * h.ny;
        if self.fields.len() != n || self.eps_map.len() != n {
            return Err(Error::Domain(format!(
                "expected {n} nodes, got {} field and {} eps entries",
                self.fields.len(),
                self.eps_map.len()
            )));
        }
        if let Some(i) = self.eps_map.iter().position(|&e| !(e > 0.0)) {
            return Err(Error::Domain(format!("eps must be > 0 everywhere (node {i})")));
        }
        Ok(())
    }

    /// Builds a profile by sampling `w(x, y) -> ((Ex, Ey, Ez), eps)` on the grid.
    pub fn from_fn<F: Fn(f64, f64) -> ([Complex64; 3], f64)>(header: ProfileHeader, electron_position: [f64; 2], w: F) -> Self {
        let mut fields = Vec::with_capacity(header.nx * header.ny);
        let mut eps_map = Vec::with_capacity(header.nx * header.ny);
        for iy in 0..header.ny {
            for ix in 0..header.nx {
                let x = header.origin[0] + ix as f64 * header.dx_over_lambda;
                let y = header.origin[1] + iy as f64 * header.dy_over_lambda;
                let (f, e) = w(x, y);
                fields.push(f);
                eps_map.push(e);
            }
        }
        Self {
            header,
            fields,
            eps_map,
            electron_position,
        }
    }

    pub fn parse(text: &str, electron_position: [f64; 2]) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, head) = lines.next().ok_or_else(|| Error::Parse("empty mode profile".into()))?;
        let header: ProfileHeader = serde_json::from_str(head).map_err(|e| parse_err(hl, e))?;
        let n = header.nx.checked_mul(header.ny).ok_or_else(|| parse_err(hl, "grid too large"))?;
        let mut fields = vec![[Complex64::default(); 3]; n];
        let mut eps_map = vec![f64::NAN; n];
        let mut count = 0;
        for (ln, line) in lines {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 9 {
                return Err(parse_err(ln, format!("expected 9 columns, got {}", cols.len())));
            }
            let ix: usize = cols[0].parse().map_err(|e| parse_err(ln, e))?;
            let iy: usize = cols[1].parse().map_err(|e| parse_err(ln, e))?;
            if ix >= header.nx || iy >= header.ny {
                return Err(parse_err(ln, format!("node ({ix}, {iy}) outside {}x{} grid", header.nx, header.ny)));
            }
            let expected = count;
            let idx = iy * header.nx + ix;
            if idx != expected {
                return Err(parse_err(ln, format!("rows must be row-major with ix fastest; expected node {expected}")));
            }
            let mut v = [0.0; 7];
            for (slot, c) in v.iter_mut().zip(&cols[2..]) {
                *slot = c.parse().map_err(|e| parse_err(ln, e))?;
            }
            fields[idx] = [
                Complex64::new(v[0], v[1]),
                Complex64::new(v[2], v[3]),
                Complex64::new(v[4], v[5]),
            ];
            eps_map[idx] = v[6];
            count += 1;
        }
        if count != n {
            return Err(Error::Parse(format!("mode profile has {count} rows, header says {n}")));
        }
        let p = Self {
            header,
            fields,
            eps_map,
            electron_position,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string(&self.header).expect("header serializes");
        s.push('\n');
        for iy in 0..self.header.ny {
            for ix in 0..self.header.nx {
                let i = iy * self.header.nx + ix;
                let [ex, ey, ez] = self.fields[i];
                let _ = writeln!(
                    s,
                    "{ix}, {iy}, {:e}, {:e}, {:e}, {:e}, {:e}, {:e}, {:e}",
                    ex.re, ex.im, ey.re, ey.im, ez.re, ez.im, self.eps_map[i]
                );
            }
        }
        s
    }

    /// Bilinear interpolation of E_z at (x, y) in λ.
    pub fn w_z_at(&self, x: f64, y: f64) -> Result<Complex64> {
        let h = &self.header;
        let fx = (x - h.origin[0]) / h.dx_over_lambda;
        let fy = (y - h.origin[1]) / h.dy_over_lambda;
        let (mx, my) = ((h.nx - 1) as f64, (h.ny - 1) as f64);
        let tol = 1e-9;
        if !(fx >= -tol && fx <= mx + tol && fy >= -tol && fy <= my + tol) {
            return Err(Error::OutsideGrid { x, y });
        }
        let fx = fx.clamp(0.0, mx);
        let fy = fy.clamp(0.0, my);
        let ix = (fx.floor() as usize).min(h.nx - 2);
        let iy = (fy.floor() as usize).min(h.ny - 2);
        let (tx, ty) = (fx - ix as f64, fy - iy as f64);
        let at = |i: usize, j: usize| self.fields[j * h.nx + i][2];
        Ok(at(ix, iy) * ((1.0 - tx) * (1.0 - ty))
            + at(ix + 1, iy) * (tx * (1.0 - ty))
            + at(ix, iy + 1) * ((1.0 - tx) * ty)
            + at(ix + 1, iy + 1) * (tx * ty))
    }

    /// Trapezoidal ∫ ε |W|² dA over the grid, in λ².
    pub fn energy_integral(&self) -> f64 {
        let h = &self.header;
        let mut total = 0.0;
        for iy in 0..h.ny {
            let wy = if iy == 0 || iy == h.ny - 1 { 0.5 } else { 1.0 };
            for ix in 0..h.nx {
                let wx = if ix == 0 || ix == h.nx - 1 { 0.5 } else { 1.0 };
                let i = iy * h.nx + ix;
                let w2: f64 = self.fields[i].iter().map(|c| c.norm_sqr()).sum();
                total += wx * wy * self.eps_map[i] * w2;
            }
        }
        total * h.dx_over_lambda * h.dy_over_lambda
    }
}

/// |g|²/(L/λ) = α_fs |W_z(r_e)|² / ∫ ε|W|² dA. With `bound` set, the ratio to
/// that bound (at L = λ) is filled in.
pub fn coupling_from_imported_mode(
    profile: &ImportedModeProfile,
    electron: &ElectronParams,
    bound: Option<(&Material, &DesignRegion)>,
    spec: &QuadratureSpec,
) -> Result<ImportedCoupling> {
    profile.validate()?;
    let [x, y] = profile.electron_position;
    let w_z = profile.w_z_at(x, y)?;
    let norm = profile.energy_integral();
    if !(norm > 0.0) {
        return Err(Error::ZeroNormalization);
    }
    let g = ALPHA_FS * w_z.norm_sqr() / norm;
    let mismatch = (profile.header.kz_over_k - 1.0 / electron.beta).abs() * electron.beta;
    let warning = (mismatch > PHASE_WARNING_THRESHOLD).then(|| {
        format!(
            "k_z/k = {} is {:.0}% away from the phase-matched 1/beta = {}",
            profile.header.kz_over_k,
            100.0 * mismatch,
            1.0 / electron.beta
        )
    });
    let b = bound
        .map(|(m, r)| coupling_bound(m, r, electron, Length::Lambda(1.0), None, spec))
        .transpose()?;
    let ratio = b.as_ref().map(|b| (g / b.g_ub_sq).sqrt());
    Ok(ImportedCoupling {
        coupling: ModeCoupling {
            g_sq_per_length: g,
            ratio_to_bound: ratio,
            normalization_integral: norm,
            g_sq_per_length_scaled: g,
            bound: b,
        },
        w_z_abs: w_z.norm(),
        phase_mismatch: mismatch,
        warning,
    })
}
