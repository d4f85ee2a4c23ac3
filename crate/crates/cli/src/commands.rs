//! Command execution. `prepare` checks every parameter against the library's
//! preconditions; `execute` then only fails on numerics.

use std::path::{Path, PathBuf};

use ebound::bounds::{coupling_bound, max_interaction_length, with_ultimate_bound};
use ebound::materials::Material;
use ebound::modes::{coupling_from_imported_mode, ImportedModeProfile};
use ebound::numerics::QuadratureSpec;
use ebound::physics::{electron_from_beta, ElectronParams, Length};
use ebound::regions::DesignRegion;
use ebound::scans::{bound_sweep, geo_map, hollow_core_scan, metal_hole_scan, HollowCoreGrid, MetalHoleGrid};
use ebound::spectra::{n_eff_closed, n_eff_numeric, peak_integral, spectrum_density, DispersionModel, SpectrumMode, ZProfile};
use ebound::sweep::Execution;
use ebound::Error;

use crate::config::*;
use crate::error::CliError;
use crate::plot::{PlotKind, PlotSpec};
use crate::table::{Cell, Table};

use Cell::{B, F, I, S};

pub struct Output {
    pub table: Table,
    /// Human-readable lines for the terminal.
    pub summary: Vec<String>,
    /// Plot used for `format = "svg"` when the config names none.
    pub plot: Option<PlotSpec>,
}

/// A fully checked job.
pub enum Job {
    GeoMap {
        region: RegionSpec,
        betas: Vec<f64>,
        ds: Vec<f64>,
        sigma: Option<f64>,
    },
    Bound {
        material: Material,
        region: DesignRegion,
        electron: ElectronParams,
        length: f64,
    },
    BoundSweep {
        material: Material,
        region: RegionSpec,
        betas: Vec<f64>,
        ds: Vec<f64>,
        length: f64,
    },
    HollowCore(HollowCoreGrid),
    MetalHole(MetalHoleGrid),
    Imported {
        profile: ImportedModeProfile,
        electron: ElectronParams,
        bound: Option<(Material, DesignRegion)>,
    },
    Spectrum {
        modes: Vec<SpectrumMode>,
        v: f64,
        omegas: Vec<f64>,
        peak: Option<PeakSpec>,
    },
    Neff {
        model: DispersionModel,
        v: f64,
        length: f64,
    },
    Lmax {
        electron: ElectronParams,
        d: f64,
        lambda_m: f64,
        bound: Option<(Material, DesignRegion)>,
    },
}

fn electron(beta: f64, sigma: Option<f64>) -> Result<ElectronParams, CliError> {
    electron_from_beta(beta, sigma.map(Length::Lambda)).map_err(CliError::config)
}

fn check_betas(betas: &[f64]) -> Result<(), CliError> {
    betas.iter().try_for_each(|&b| electron(b, None).map(drop))
}

fn check_material(m: &Material) -> Result<(), CliError> {
    m.validate().map_err(CliError::config)
}

fn check_ds(region: &RegionSpec, ds: &[f64]) -> Result<(), CliError> {
    let base = region.base(ds[0])?;
    ds.iter().try_for_each(|&d| base.with_d(d).validate().map_err(CliError::config))
}

fn optional_bound(m: &Option<Material>, r: &Option<RegionSpec>) -> Result<Option<(Material, DesignRegion)>, CliError> {
    match (m, r) {
        (Some(m), Some(r)) => {
            check_material(m)?;
            Ok(Some((*m, r.at()?)))
        }
        (None, None) => Ok(None),
        _ => Err(CliError::Config("material and region must be given together".into())),
    }
}

fn positive(v: f64, what: &str) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{what} must be positive, got {v}")))
    }
}

pub fn prepare(cfg: &RunConfig, base_dir: &Path) -> Result<Job, CliError> {
    Ok(match &cfg.params {
        Params::GeoMap(p) => {
            let betas = p.beta.values("beta")?;
            let ds = p.d.values("d")?;
            check_betas(&betas)?;
            check_ds(&p.region, &ds)?;
            let sigma = p.sigma.map(|s| s.lam());
            if let Some(s) = sigma {
                positive(s, "sigma")?;
            }
            Job::GeoMap {
                region: p.region.clone(),
                betas,
                ds,
                sigma,
            }
        }
        Params::Bound(p) => {
            check_material(&p.material)?;
            let length = p.length.lam();
            if !(length >= 0.0 && length.is_finite()) {
                return Err(CliError::Config(format!("length must be >= 0, got {length}")));
            }
            Job::Bound {
                material: p.material,
                region: p.region.at()?,
                electron: electron(p.beta, p.sigma.map(|s| s.lam()))?,
                length,
            }
        }
        Params::BoundSweep(p) => {
            check_material(&p.material)?;
            let betas = p.beta.values("beta")?;
            let ds = p.d.values("d")?;
            check_betas(&betas)?;
            check_ds(&p.region, &ds)?;
            let length = p.length.lam();
            if !(length >= 0.0 && length.is_finite()) {
                return Err(CliError::Config(format!("length must be >= 0, got {length}")));
            }
            Job::BoundSweep {
                material: p.material,
                region: p.region.clone(),
                betas,
                ds,
                length,
            }
        }
        Params::HollowCoreScan(p) => {
            let grid = if p.reference {
                if p.chi.is_some() || p.d.is_some() || p.n_d2.is_some() {
                    return Err(CliError::Config("reference = true excludes chi, d and n_d2".into()));
                }
                HollowCoreGrid {
                    all_roots: p.all_roots,
                    ..HollowCoreGrid::reference()
                }
            } else {
                let need = |what: &str| CliError::Config(format!("{what} is required unless reference = true"));
                HollowCoreGrid {
                    chis: p.chi.as_ref().ok_or_else(|| need("chi"))?.values("chi")?,
                    ds: p.d.as_ref().ok_or_else(|| need("d"))?.values("d")?,
                    n_d2: p.n_d2.ok_or_else(|| need("n_d2"))?,
                    all_roots: p.all_roots,
                }
            };
            grid.points().map_err(CliError::config)?;
            Job::HollowCore(grid)
        }
        Params::MetalHoleScan(p) => {
            let grid = if p.reference {
                if p.d.is_some() || p.omega_p.is_some() {
                    return Err(CliError::Config("reference = true excludes d and omega_p".into()));
                }
                MetalHoleGrid::reference()
            } else {
                let need = |what: &str| CliError::Config(format!("{what} is required unless reference = true"));
                MetalHoleGrid {
                    ds: p.d.as_ref().ok_or_else(|| need("d"))?.values("d")?,
                    omega_ps: p.omega_p.as_ref().ok_or_else(|| need("omega_p"))?.values("omega_p")?,
                }
            };
            grid.ds.iter().try_for_each(|&d| positive(d, "d"))?;
            grid.omega_ps.iter().try_for_each(|&w| positive(w, "omega_p"))?;
            Job::MetalHole(grid)
        }
        Params::ImportedMode(p) => {
            let path: PathBuf = base_dir.join(&p.profile);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Config(format!("cannot read mode profile {}: {e}", path.display())))?;
            let pos = [p.electron_position[0].lam(), p.electron_position[1].lam()];
            let profile = ImportedModeProfile::parse(&text, pos).map_err(CliError::config)?;
            profile.validate().map_err(CliError::config)?;
            profile.w_z_at(pos[0], pos[1]).map_err(CliError::config)?;
            Job::Imported {
                profile,
                electron: electron(p.beta, None)?,
                bound: optional_bound(&p.material, &p.region)?,
            }
        }
        Params::Spectrum(p) => {
            positive(p.v, "v")?;
            if p.modes.is_empty() {
                return Err(CliError::Config("spectrum needs at least one mode".into()));
            }
            let modes: Vec<SpectrumMode> = p
                .modes
                .iter()
                .map(|m| SpectrumMode {
                    omega_m: m.omega_m,
                    gamma_d: m.gamma_d,
                    z_profile: ZProfile {
                        u0: m.u0,
                        k_m: m.k_m,
                        length: m.length,
                    },
                    g_m_sq: m.g_m_sq,
                })
                .collect();
            for (i, m) in modes.iter().enumerate() {
                m.validate().map_err(|e| CliError::Config(format!("modes[{i}]: {e}")))?;
            }
            if let Some(pk) = p.peak {
                if pk.index >= modes.len() {
                    return Err(CliError::Config(format!("peak.index {} out of range", pk.index)));
                }
                positive(pk.delta_omega, "peak.delta_omega")?;
            }
            Job::Spectrum {
                modes,
                v: p.v,
                omegas: p.omega.values("omega")?,
                peak: p.peak,
            }
        }
        Params::Neff(p) => {
            positive(p.v, "v")?;
            positive(p.length, "length")?;
            let model = DispersionModel {
                k0: p.k0,
                omega0: p.omega0,
                v_g: p.v_g,
                d2w_dk2: p.d2w_dk2,
                d3w_dk3: p.d3w_dk3,
            };
            if (p.omega0 - p.v * p.k0).abs() > 1e-9 * p.omega0.abs().max((p.v * p.k0).abs()) {
                return Err(CliError::Config(format!(
                    "model is not phase matched: omega0 = {}, v*k0 = {}",
                    p.omega0,
                    p.v * p.k0
                )));
            }
            Job::Neff {
                model,
                v: p.v,
                length: p.length,
            }
        }
        Params::Lmax(p) => {
            let lambda_m = p.wavelength.meters().expect("wavelength is checked to be metric");
            let d = p.d.lam();
            positive(d, "d")?;
            Job::Lmax {
                electron: electron(p.beta, Some(p.sigma.lam()))?,
                d,
                lambda_m,
                bound: optional_bound(&p.material, &p.region)?,
            }
        }
    })
}

fn num(e: Error) -> CliError {
    CliError::numerical(e)
}

fn plot(kind: PlotKind, x: &str, y: &str, z: Option<&str>) -> Option<PlotSpec> {
    Some(PlotSpec {
        kind,
        x: Some(x.into()),
        y: Some(y.into()),
        z: z.map(str::to_string),
        log_x: false,
        log_y: false,
        // near-field maps span tens of decades
        log_z: z.is_some(),
    })
}

pub fn execute(job: &Job, spec: &QuadratureSpec, exec: Execution) -> Result<Output, CliError> {
    let mut summary = Vec::new();
    let (table, default_plot) = match job {
        Job::GeoMap { region, betas, ds, sigma } => {
            let shape = region.base(ds[0])?;
            let rows = geo_map(&shape, betas, ds, *sigma, spec, exec).map_err(num)?;
            let mut t = Table::new(&["beta", "d_over_lambda", "g_geo_sq"]);
            for r in rows {
                t.push(vec![F(r.beta), F(r.d_over_lambda), F(r.g_geo_sq)]);
            }
            (t, plot(PlotKind::Heatmap, "beta", "d_over_lambda", Some("g_geo_sq")))
        }
        Job::Bound {
            material,
            region,
            electron,
            length,
        } => {
            let b = coupling_bound(material, region, electron, Length::Lambda(*length), None, spec).map_err(num)?;
            let mut t = Table::new(&[
                "beta",
                "d_over_lambda",
                "length_over_lambda",
                "g_geo_sq",
                "g_ub_sq",
                "g_ub",
                "g_ub_sq_per_length",
                "g_ub_per_sqrt_length",
            ]);
            t.push(vec![
                F(electron.beta),
                F(region.d()),
                F(*length),
                F(b.geometric.value),
                F(b.g_ub_sq),
                F(b.g_ub()),
                F(b.per_unit_length),
                F(b.g_ub_per_sqrt_length()),
            ]);
            summary.push(format!("g_ub = {:.6}  (g_ub^2 = {:.6e}, L = {} lambda)", b.g_ub(), b.g_ub_sq, length));
            if let Some(w) = &b.geometric.warning {
                summary.push(format!("warning: {w}"));
            }
            (t, None)
        }
        Job::BoundSweep {
            material,
            region,
            betas,
            ds,
            length,
        } => {
            let shape = region.base(ds[0])?;
            let rows = bound_sweep(material, &shape, *length, betas, ds, spec, exec).map_err(num)?;
            let mut t = Table::new(&["beta", "d_over_lambda", "g_geo_sq", "g_ub_sq", "g_ub"]);
            for r in rows {
                t.push(vec![F(r.beta), F(r.d_over_lambda), F(r.g_geo_sq), F(r.g_ub_sq), F(r.g_ub)]);
            }
            (t, plot(PlotKind::Heatmap, "beta", "d_over_lambda", Some("g_ub")))
        }
        Job::HollowCore(grid) => {
            let rows = hollow_core_scan(grid, spec, exec).map_err(num)?;
            let mut t = Table::new(&[
                "chi",
                "d_over_lambda",
                "d2_over_lambda",
                "beta_match",
                "g_per_sqrtL",
                "ratio",
                "k_z_over_k",
                "root_index",
                "n_roots",
            ]);
            for r in &rows {
                t.push(vec![
                    F(r.chi),
                    F(r.d_over_lambda),
                    F(r.d2_over_lambda),
                    F(r.beta_match),
                    F(r.g_per_sqrt_l),
                    F(r.ratio),
                    F(r.k_z),
                    I(r.root_index),
                    I(r.n_roots),
                ]);
            }
            let max = rows.iter().map(|r| r.ratio).fold(f64::NAN, f64::max);
            summary.push(format!("{} modes, max ratio {max:.6}", rows.len()));
            (t, plot(PlotKind::Scatter, "beta_match", "ratio", None))
        }
        Job::MetalHole(grid) => {
            let rows = metal_hole_scan(grid, spec, exec).map_err(num)?;
            let mut t = Table::new(&[
                "d_over_lambda",
                "omega_p_over_omega",
                "beta_match",
                "g_per_sqrtL",
                "ratio",
                "root_index",
                "n_roots",
                "above_omega_sp",
            ]);
            for r in &rows {
                t.push(vec![
                    F(r.d_over_lambda),
                    F(r.omega_p_over_omega),
                    F(r.beta_match),
                    F(r.g_per_sqrt_l),
                    F(r.ratio),
                    I(r.root_index),
                    I(r.n_roots),
                    B(r.above_omega_sp),
                ]);
            }
            let max = rows.iter().map(|r| r.ratio).fold(f64::NAN, f64::max);
            summary.push(format!("{} modes, max ratio {max:.6}", rows.len()));
            (t, plot(PlotKind::Scatter, "beta_match", "ratio", None))
        }
        Job::Imported {
            profile,
            electron,
            bound,
        } => {
            let b = bound.as_ref().map(|(m, r)| (m, r));
            let c = coupling_from_imported_mode(profile, electron, b, spec).map_err(num)?;
            let mut t = Table::new(&[
                "beta",
                "x_over_lambda",
                "y_over_lambda",
                "w_z_abs",
                "normalization_integral",
                "g_sq_per_length",
                "g_per_sqrtL",
                "phase_mismatch",
                "ratio",
            ]);
            let [x, y] = profile.electron_position;
            t.push(vec![
                F(electron.beta),
                F(x),
                F(y),
                F(c.w_z_abs),
                F(c.coupling.normalization_integral),
                F(c.coupling.g_sq_per_length),
                F(c.coupling.g_per_sqrt_length()),
                F(c.phase_mismatch),
                F(c.coupling.ratio_to_bound.unwrap_or(f64::NAN)),
            ]);
            summary.push(format!("|g|/sqrt(L/lambda) = {:.6e}", c.coupling.g_per_sqrt_length()));
            if let Some(w) = c.warning {
                summary.push(format!("warning: {w}"));
            }
            (t, None)
        }
        Job::Spectrum { modes, v, omegas, peak } => {
            let mut t = Table::new(&["omega", "density"]);
            for &w in omegas {
                let d = spectrum_density(modes, w, *v).map_err(|e| num(e.at(format!("omega={w}"))))?;
                t.push(vec![F(w), F(d)]);
            }
            if let Some(pk) = peak {
                let p = peak_integral(modes, pk.index, pk.delta_omega, *v, spec).map_err(num)?;
                let g = modes[pk.index].g_m_sq;
                summary.push(format!("peak {} integral = {p:.6e} ({:.5} of g_m_sq)", pk.index, p / g));
            }
            (t, plot(PlotKind::Line, "omega", "density", None))
        }
        Job::Neff { model, v, length } => {
            let n = n_eff_numeric(model, *v, *length, spec).map_err(num)?;
            let (closed, regime) = match n_eff_closed(model, *v, *length) {
                Ok(c) => (c.value, format!("{:?}", c.regime).to_lowercase()),
                Err(Error::AmbiguousRegime(_)) => (f64::NAN, "ambiguous".into()),
                Err(e) => return Err(num(e)),
            };
            let mut t = Table::new(&["n_eff_numeric", "n_eff_closed", "regime"]);
            t.push(vec![F(n), F(closed), S(regime.clone())]);
            summary.push(format!("N_eff = {n:.6} (closed form {closed:.6}, {regime})"));
            (t, None)
        }
        Job::Lmax {
            electron,
            d,
            lambda_m,
            bound,
        } => {
            let mut lim = max_interaction_length(electron, Length::Lambda(*d), Some(*lambda_m)).map_err(num)?;
            if let Some((m, r)) = bound {
                lim = with_ultimate_bound(lim, m, r, electron, Some(*lambda_m), spec).map_err(num)?;
            }
            let l_lambda = lim.l_max_lambda.unwrap_or(f64::NAN);
            let mut t = Table::new(&["beta", "d_over_lambda", "theta_rad", "l_max_m", "l_max_over_lambda", "ultimate_g_ub_sq"]);
            t.push(vec![
                F(electron.beta),
                F(*d),
                F(lim.theta),
                F(lim.l_max_m),
                F(l_lambda),
                F(lim.ultimate_g_ub_sq.unwrap_or(f64::NAN)),
            ]);
            summary.push(format!("L_max = {:.6e} m = {l_lambda:.4} lambda", lim.l_max_m));
            (t, None)
        }
    };
    Ok(Output {
        table,
        summary,
        plot: default_plot,
    })
}
