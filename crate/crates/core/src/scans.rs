//! Grid sweeps behind the CLI: geometric-factor maps, bound sweeps and the
//! two mode-versus-bound scans. Rows come back in grid order.

use serde::{Deserialize, Serialize};

use crate::bounds::coupling_bound;
use crate::error::{Error, Result};
use crate::materials::Material;
use crate::modes::{coupling_hollow_core, coupling_metal_hole, solve_hollow_core_all, solve_metal_hole_all, HollowCoreConfig, MetalHoleConfig};
use crate::numerics::{logspace, QuadratureSpec};
use crate::physics::{electron_from_beta, evanescent_scales, Length};
use crate::regions::{geometric_factor_auto, DesignRegion};
use crate::sweep::{map_indexed, Execution};

fn grid2<A: Copy, B: Copy>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn collect<R>(chunks: Vec<Result<Vec<R>>>) -> Result<Vec<R>> {
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoRow {
    pub beta: f64,
    pub d_over_lambda: f64,
    pub g_geo_sq: f64,
}

/// g_geo² over β × d for the region shape of `region` (its d is replaced).
pub fn geo_map(
    region: &DesignRegion,
    betas: &[f64],
    ds: &[f64],
    sigma_over_lambda: Option<f64>,
    spec: &QuadratureSpec,
    exec: Execution,
) -> Result<Vec<GeoRow>> {
    let pts = grid2(betas, ds);
    let rows = map_indexed(&pts, exec, |_, &(beta, d)| {
        let r = region.with_d(d);
        electron_from_beta(beta, None)
            .and_then(|e| evanescent_scales(&e, 1.0))
            .and_then(|s| geometric_factor_auto(&r, &s, sigma_over_lambda, spec))
            .map(|g| GeoRow {
                beta,
                d_over_lambda: d,
                g_geo_sq: g.value,
            })
            .map_err(|e| e.at(format!("beta={beta}, d={d}")))
    })?;
    rows.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub beta: f64,
    pub d_over_lambda: f64,
    pub g_geo_sq: f64,
    pub g_ub_sq: f64,
    pub g_ub: f64,
}

/// Coupling bound at interaction length `length_lambda` over β × d.
pub fn bound_sweep(
    material: &Material,
    region: &DesignRegion,
    length_lambda: f64,
    betas: &[f64],
    ds: &[f64],
    spec: &QuadratureSpec,
    exec: Execution,
) -> Result<Vec<BoundRow>> {
    let pts = grid2(betas, ds);
    let rows = map_indexed(&pts, exec, |_, &(beta, d)| {
        electron_from_beta(beta, None)
            .and_then(|e| coupling_bound(material, &region.with_d(d), &e, Length::Lambda(length_lambda), None, spec))
            .map(|b| BoundRow {
                beta,
                d_over_lambda: d,
                g_geo_sq: b.geometric.value,
                g_ub_sq: b.g_ub_sq,
                g_ub: b.g_ub(),
            })
            .map_err(|e| e.at(format!("beta={beta}, d={d}")))
    })?;
    rows.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HollowCoreRow {
    pub chi: f64,
    pub d_over_lambda: f64,
    pub d2_over_lambda: f64,
    /// 0 is the fundamental (largest k_z) root.
    pub root_index: usize,
    pub n_roots: usize,
    pub k_z: f64,
    pub beta_match: f64,
    pub g_per_sqrt_l: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HollowCoreGrid {
    pub chis: Vec<f64>,
    pub ds: Vec<f64>,
    /// Shell thicknesses per (χ, d), log-spaced in [0.1/√ε, 1/√χ].
    pub n_d2: usize,
    /// Report every root rather than only the fundamental.
    #[serde(default)]
    pub all_roots: bool,
}

impl HollowCoreGrid {
    /// 10 χ × 11 d × 61 d2.
    pub fn reference() -> Self {
        Self {
            chis: logspace(-1.0, 2.0, 10),
            ds: logspace(-2.0, 0.0, 11),
            n_d2: 61,
            all_roots: false,
        }
    }

    pub fn d2_values(chi: f64, d: f64, n: usize) -> Vec<f64> {
        let eps = 1.0 + chi;
        logspace((0.1 / eps.sqrt()).log10(), (1.0 / chi.sqrt()).log10(), n)
            .into_iter()
            .map(|t| d + t)
            .collect()
    }

    pub fn points(&self) -> Result<Vec<(f64, f64, f64)>> {
        if let Some(c) = self.chis.iter().find(|&&c| !(c > 0.0)) {
            return Err(Error::Domain(format!("chi must be positive, got {c}")));
        }
        if let Some(d) = self.ds.iter().find(|&&d| !(d > 0.0)) {
            return Err(Error::Domain(format!("d must be positive, got {d}")));
        }
        if self.n_d2 == 0 {
            return Err(Error::Domain("n_d2 must be at least 1".into()));
        }
        Ok(grid2(&self.chis, &self.ds)
            .into_iter()
            .flat_map(|(c, d)| Self::d2_values(c, d, self.n_d2).into_iter().map(move |d2| (c, d, d2)))
            .collect())
    }
}

/// Points without a guided mode produce no row.
pub fn hollow_core_scan(grid: &HollowCoreGrid, spec: &QuadratureSpec, exec: Execution) -> Result<Vec<HollowCoreRow>> {
    let pts = grid.points()?;
    let chunks = map_indexed(&pts, exec, |_, &(chi, d, d2)| {
        let cfg = HollowCoreConfig { d, d2, eps: 1.0 + chi };
        let modes = match solve_hollow_core_all(&cfg) {
            Ok(m) => m,
            Err(Error::NoMode(_)) => return Ok(Vec::new()),
            Err(e) => return Err(e.at(format!("chi={chi}, d={d}, d2={d2}"))),
        };
        let n_roots = modes.len();
        let take = if grid.all_roots { n_roots } else { 1 };
        modes
            .iter()
            .take(take)
            .enumerate()
            .map(|(i, m)| {
                let c = coupling_hollow_core(m, &cfg, spec).map_err(|e| e.at(format!("chi={chi}, d={d}, d2={d2}")))?;
                Ok(HollowCoreRow {
                    chi,
                    d_over_lambda: d,
                    d2_over_lambda: d2,
                    root_index: i,
                    n_roots,
                    k_z: m.k_z,
                    beta_match: m.beta_match,
                    g_per_sqrt_l: c.g_per_sqrt_length(),
                    ratio: c.ratio_to_bound.unwrap_or(f64::NAN),
                })
            })
            .collect()
    })?;
    collect(chunks)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetalHoleRow {
    pub d_over_lambda: f64,
    pub omega_p_over_omega: f64,
    /// 0 is the smallest-k_z root.
    pub root_index: usize,
    pub n_roots: usize,
    pub beta_match: f64,
    pub g_per_sqrt_l: f64,
    pub ratio: f64,
    /// ω above the flat-surface plasmon frequency ω_p/√2.
    pub above_omega_sp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetalHoleGrid {
    pub ds: Vec<f64>,
    pub omega_ps: Vec<f64>,
}

impl MetalHoleGrid {
    /// 11 radii × 3000 ω_p/ω in [1, 2.5].
    pub fn reference() -> Self {
        Self {
            ds: logspace(-2.0, 0.0, 11),
            omega_ps: logspace(0.0, 2.5f64.log10(), 3000),
        }
    }
}

/// Every root is reported. ω_p/ω ≤ 1 (no SPP regime) and points without a
/// bound mode produce no row.
pub fn metal_hole_scan(grid: &MetalHoleGrid, spec: &QuadratureSpec, exec: Execution) -> Result<Vec<MetalHoleRow>> {
    if let Some(d) = grid.ds.iter().find(|&&d| !(d > 0.0)) {
        return Err(Error::Domain(format!("d must be positive, got {d}")));
    }
    let pts = grid2(&grid.ds, &grid.omega_ps);
    let chunks = map_indexed(&pts, exec, |_, &(d, wp)| {
        let cfg = MetalHoleConfig { d, omega_p_over_omega: wp };
        if !(wp > 1.0) {
            return Ok(Vec::new());
        }
        let modes = match solve_metal_hole_all(&cfg) {
            Ok(m) => m,
            Err(Error::NoMode(_)) => return Ok(Vec::new()),
            Err(e) => return Err(e.at(format!("d={d}, omega_p/omega={wp}"))),
        };
        let n_roots = modes.len();
        modes
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let c = coupling_metal_hole(m, &cfg, spec).map_err(|e| e.at(format!("d={d}, omega_p/omega={wp}")))?;
                Ok(MetalHoleRow {
                    d_over_lambda: d,
                    omega_p_over_omega: wp,
                    root_index: i,
                    n_roots,
                    beta_match: m.beta_match,
                    g_per_sqrt_l: c.g_per_sqrt_length(),
                    ratio: c.ratio_to_bound.unwrap_or(f64::NAN),
                    above_omega_sp: wp < std::f64::consts::SQRT_2,
                })
            })
            .collect()
    })?;
    collect(chunks)
}
