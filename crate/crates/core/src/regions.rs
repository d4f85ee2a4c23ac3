//! Design regions and the geometric factor g_geo².

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nearfield::{gaussian_intensity_factor, intensity_factor_scaled};
use crate::numerics::bessel::{k01e, k2e};
use crate::numerics::{golden_max, integrate_decaying, integrate_panels, linspace, QuadratureSpec};
use crate::physics::EvanescentScales;

/// Admissible-medium geometry. Separations are in units of λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DesignRegion {
    HalfSpace { d: f64 },
    TwoSidedSlot { d: f64, duty: f64 },
    CylinderExterior { d: f64 },
    Annulus { d: f64, d2: f64 },
}

impl DesignRegion {
    pub fn validate(&self) -> Result<()> {
        let d = self.d();
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidRegion(format!("separation d must be positive, got {d}")));
        }
        match *self {
            DesignRegion::TwoSidedSlot { duty, .. } if !(duty > 0.0 && duty <= 1.0) => {
                Err(Error::InvalidRegion(format!("duty must lie in (0, 1], got {duty}")))
            }
            DesignRegion::Annulus { d, d2 } if !(d2 > d && d2.is_finite()) => {
                Err(Error::InvalidRegion(format!("annulus needs d2 > d, got d={d}, d2={d2}")))
            }
            _ => Ok(()),
        }
    }

    /// Minimal separation from the beam axis.
    pub fn d(&self) -> f64 {
        match *self {
            DesignRegion::HalfSpace { d }
            | DesignRegion::TwoSidedSlot { d, .. }
            | DesignRegion::CylinderExterior { d }
            | DesignRegion::Annulus { d, .. } => d,
        }
    }

    /// Longitudinal fill fraction; applied to the length term of a bound.
    pub fn duty(&self) -> f64 {
        match *self {
            DesignRegion::TwoSidedSlot { duty, .. } => duty,
            _ => 1.0,
        }
    }

    pub fn with_d(&self, d: f64) -> Self {
        match *self {
            DesignRegion::HalfSpace { .. } => DesignRegion::HalfSpace { d },
            DesignRegion::TwoSidedSlot { duty, .. } => DesignRegion::TwoSidedSlot { d, duty },
            DesignRegion::CylinderExterior { .. } => DesignRegion::CylinderExterior { d },
            DesignRegion::Annulus { d: d1, d2 } => DesignRegion::Annulus { d, d2: d2 - d1 + d },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DesignRegion::HalfSpace { .. } => "half_space",
            DesignRegion::TwoSidedSlot { .. } => "two_sided_slot",
            DesignRegion::CylinderExterior { .. } => "cylinder_exterior",
            DesignRegion::Annulus { .. } => "annulus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeoMethod {
    ClosedForm,
    Quadrature,
    GaussianQuadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricFactor {
    pub value: f64,
    /// `value · exp(2α_e d)`; stays representable when `value` underflows.
    pub value_scaled: f64,
    pub region: DesignRegion,
    pub beta: f64,
    pub d_over_lambda: f64,
    pub method: GeoMethod,
    pub warning: Option<String>,
}

/// ∫ g(ρ) dρ from `d` to `upper` (may be ∞) for an integrand whose tail
/// decays like exp(−2αρ) and which may vary on scales ≪ 1/α near `d`.
fn radial_integral<F: Fn(f64) -> f64>(g: F, d: f64, upper: f64, alpha: f64, spec: &QuadratureSpec) -> Result<f64> {
    let knee = d + 1.0 / alpha;
    let mut total = 0.0;
    let mut start = d;
    if d < 0.5 / alpha {
        // geometric panels between d and the decay length resolve 1/ρ-type behaviour
        let stop = knee.min(upper);
        let mut pts = vec![d];
        let mut p = 2.0 * d;
        while p < stop {
            pts.push(p);
            p *= 2.0;
        }
        pts.push(stop);
        total += integrate_panels(&g, &pts, &spec.tightened(0.5))?;
        start = stop;
    }
    if start < upper {
        total += integrate_decaying(&g, start, upper, 0.5 / alpha, &spec.tightened(0.5))?;
    }
    Ok(total)
}

fn polar_weight(region: &DesignRegion, rho: f64) -> f64 {
    match *region {
        DesignRegion::HalfSpace { d } => rho * 2.0 * (d / rho).min(1.0).acos(),
        DesignRegion::TwoSidedSlot { d, .. } => 2.0 * rho * 2.0 * (d / rho).min(1.0).acos(),
        DesignRegion::CylinderExterior { .. } | DesignRegion::Annulus { .. } => 2.0 * PI * rho,
    }
}

fn upper_limit(region: &DesignRegion) -> f64 {
    match *region {
        DesignRegion::Annulus { d2, .. } => d2,
        _ => f64::INFINITY,
    }
}

/// g_geo² for a point electron (`sigma_over_lambda = None`) or a Gaussian beam.
/// Point-electron values always use radial quadrature; see
/// [`geometric_factor_auto`] for the closed forms.
pub fn geometric_factor(
    region: &DesignRegion,
    scales: &EvanescentScales,
    sigma_over_lambda: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<GeometricFactor> {
    region.validate()?;
    spec.validate()?;
    let lam = scales.lambda;
    let a = scales.alpha_e;
    let d = region.d() * lam;
    let upper = upper_limit(region) * lam;
    let region_abs = scale_region(region, lam);
    match sigma_over_lambda {
        None => {
            let scaled = radial_integral(
                |rho| intensity_factor_scaled(scales, rho) * (-2.0 * a * (rho - d)).exp() * polar_weight(&region_abs, rho),
                d,
                upper,
                a,
                spec,
            )?;
            Ok(finish(region, scales, scaled, GeoMethod::Quadrature, None))
        }
        Some(sigma) => {
            if !(sigma > 0.0) {
                return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
            }
            let warning = (region.d() <= sigma).then(|| {
                format!("separation d={} does not exceed the beam waist sigma={sigma}", region.d())
            });
            let sig = sigma * lam;
            let inner = spec.tightened(0.1);
            let raw = radial_integral(
                |rho| {
                    gaussian_intensity_factor(scales, sig, rho, &inner).unwrap_or(f64::NAN)
                        * polar_weight(&region_abs, rho)
                },
                d,
                upper,
                a,
                spec,
            )?;
            if !raw.is_finite() {
                return Err(Error::QuadratureNoConvergence {
                    estimate: f64::INFINITY,
                    tolerance: spec.relative_tolerance,
                });
            }
            let mut g = finish(region, scales, raw * (2.0 * a * d).exp(), GeoMethod::GaussianQuadrature, warning);
            g.value = raw;
            Ok(g)
        }
    }
}

/// Closed form where one exists (cylinder exterior, annulus; point
/// electron), quadrature otherwise.
pub fn geometric_factor_auto(
    region: &DesignRegion,
    scales: &EvanescentScales,
    sigma_over_lambda: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<GeometricFactor> {
    region.validate()?;
    if sigma_over_lambda.is_some() {
        return geometric_factor(region, scales, sigma_over_lambda, spec);
    }
    let lam = scales.lambda;
    let scaled = match *region {
        DesignRegion::CylinderExterior { d } => cylinder_closed_form_scaled(scales, d * lam),
        DesignRegion::Annulus { d, d2 } => annulus_closed_form_scaled(scales, d * lam, d2 * lam),
        _ => return geometric_factor(region, scales, None, spec),
    };
    Ok(finish(region, scales, scaled, GeoMethod::ClosedForm, None))
}

fn finish(
    region: &DesignRegion,
    scales: &EvanescentScales,
    scaled: f64,
    method: GeoMethod,
    warning: Option<String>,
) -> GeometricFactor {
    let d = region.d();
    GeometricFactor {
        value: scaled * (-2.0 * scales.alpha_e * d * scales.lambda).exp(),
        value_scaled: scaled,
        region: *region,
        beta: scales.beta,
        d_over_lambda: d,
        method,
        warning,
    }
}

fn scale_region(region: &DesignRegion, lam: f64) -> DesignRegion {
    match *region {
        DesignRegion::HalfSpace { d } => DesignRegion::HalfSpace { d: d * lam },
        DesignRegion::TwoSidedSlot { d, duty } => DesignRegion::TwoSidedSlot { d: d * lam, duty },
        DesignRegion::CylinderExterior { d } => DesignRegion::CylinderExterior { d: d * lam },
        DesignRegion::Annulus { d, d2 } => DesignRegion::Annulus {
            d: d * lam,
            d2: d2 * lam,
        },
    }
}

/// Cylinder-exterior g_geo² times exp(2α_e d); `d` in the unit of `scales.lambda`.
///
/// With z = α_e d:
/// `π z² [(α²/k²)(K1² − K0²) + (k_e²/k²)(K0 K2 − K1²)]`, from
/// ∫_z^∞ t K_ν² dt = (z²/2)(K_{ν−1}K_{ν+1} − K_ν²).
pub fn cylinder_closed_form_scaled(scales: &EvanescentScales, d: f64) -> f64 {
    let z = scales.alpha_e * d;
    let (k0, k1) = k01e(z);
    let k2 = k2e(z);
    let kk = scales.k * scales.k;
    let a2 = scales.alpha_e * scales.alpha_e / kk;
    let e2 = scales.k_e * scales.k_e / kk;
    PI * z * z * (a2 * (k1 * k1 - k0 * k0) + e2 * (k0 * k2 - k1 * k1))
}

pub fn cylinder_closed_form(scales: &EvanescentScales, d: f64) -> f64 {
    cylinder_closed_form_scaled(scales, d) * (-2.0 * scales.alpha_e * d).exp()
}

/// Annulus g_geo² times exp(2α_e d).
pub fn annulus_closed_form_scaled(scales: &EvanescentScales, d: f64, d2: f64) -> f64 {
    cylinder_closed_form_scaled(scales, d)
        - cylinder_closed_form_scaled(scales, d2) * (-2.0 * scales.alpha_e * (d2 - d)).exp()
}

pub const PEAK_SCAN_LO: f64 = 0.02;
pub const PEAK_SCAN_HI: f64 = 0.95;
pub const PEAK_SCAN_POINTS: usize = 200;

/// β of the interior maximum of g_geo²(β) on [0.02, 0.95], if any.
pub fn find_subrelativistic_peak(region: &DesignRegion, spec: &QuadratureSpec) -> Result<Option<f64>> {
    match region {
        DesignRegion::HalfSpace { .. } | DesignRegion::CylinderExterior { .. } => {}
        _ => {
            return Err(Error::InvalidRegion(
                "peak search supports half_space and cylinder_exterior".into(),
            ))
        }
    }
    let eval = |beta: f64| -> Result<f64> {
        let s = EvanescentScales::unit(beta)?;
        Ok(geometric_factor_auto(region, &s, None, spec)?.value)
    };
    let betas = linspace(PEAK_SCAN_LO, PEAK_SCAN_HI, PEAK_SCAN_POINTS);
    let vals = betas.iter().map(|&b| eval(b)).collect::<Result<Vec<_>>>()?;
    for i in 1..betas.len() - 1 {
        if vals[i] > vals[i - 1] && vals[i] >= vals[i + 1] {
            let mut failed = None;
            let b = golden_max(
                |x| match eval(x) {
                    Ok(v) => v,
                    Err(e) => {
                        failed = Some(e);
                        f64::NEG_INFINITY
                    }
                },
                betas[i - 1],
                betas[i + 1],
                1e-8,
            );
            if let Some(e) = failed {
                return Err(e);
            }
            return Ok(Some(b));
        }
    }
    Ok(None)
}
