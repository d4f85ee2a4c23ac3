//! Adaptive Gauss–Kronrod (7/15) quadrature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub absolute_floor: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-10,
            absolute_floor: 1e-300,
            max_subdivisions: 400,
        }
    }
}

impl QuadratureSpec {
    pub fn new(relative_tolerance: f64, absolute_floor: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            relative_tolerance,
            absolute_floor,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_tolerance(self, relative_tolerance: f64) -> Result<Self> {
        Self::new(relative_tolerance, self.absolute_floor, self.max_subdivisions)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance <= 1e-3) {
            return Err(Error::Domain(format!(
                "relative_tolerance must lie in (0, 1e-3], got {}",
                self.relative_tolerance
            )));
        }
        if !(self.absolute_floor >= 0.0) {
            return Err(Error::Domain("absolute_floor must be >= 0".into()));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::Domain(format!(
                "max_subdivisions must be >= 8, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }

    /// Same spec with a tighter relative tolerance, for nested integrals.
    pub(crate) fn tightened(&self, factor: f64) -> Self {
        Self {
            relative_tolerance: (self.relative_tolerance * factor).max(1e-14),
            ..*self
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value,
        error,
        resabs,
    }
}

/// Integral of `f` over `[a, b]` by globally adaptive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_panels(&f, &[a, b], spec)
}

/// Like [`integrate`] but starting from the given breakpoints (sorted).
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    adaptive(f, breaks, spec).map(|(v, _)| v)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], spec: &QuadratureSpec) -> Result<(f64, f64)> {
    if breaks.len() < 2 || breaks.windows(2).all(|w| w[0] == w[1]) {
        return Ok((0.0, 0.0));
    }
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .filter(|w| w[0] != w[1])
        .map(|w| gk15(f, w[0], w[1]))
        .collect();
    let budget = spec.max_subdivisions + panels.len();
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let tol = (spec.relative_tolerance * total.abs()).max(spec.absolute_floor);
        // roundoff limit: cancellation makes |total| meaningless below this
        let roundoff: f64 = 100.0 * f64::EPSILON * panels.iter().map(|p| p.resabs).sum::<f64>();
        if err <= tol || err <= roundoff {
            return Ok((total, err));
        }
        if panels.len() >= budget {
            return Err(Error::QuadratureNoConvergence {
                estimate: err,
                tolerance: tol,
            });
        }
        let (idx, worst) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval no longer divisible in double precision
            return Err(Error::QuadratureNoConvergence {
                estimate: err,
                tolerance: tol,
            });
        }
        panels[idx] = gk15(f, worst.a, mid);
        panels.push(gk15(f, mid, worst.b));
    }
}

/// Integral of `f` from `edge` towards `limit` (which may be ±∞) for an
/// integrand that decays roughly like `exp(−|t − edge|/decay_scale)`.
///
/// The range is consumed in chunks of a few decay lengths; integration stops
/// once the geometric tail bound implied by the decay of the last chunks falls
/// below `max(absolute_floor, relative_tolerance·|total|)`.
pub fn integrate_decaying<F: Fn(f64) -> f64>(
    f: F,
    edge: f64,
    limit: f64,
    decay_scale: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(decay_scale > 0.0 && decay_scale.is_finite()) {
        return Err(Error::Domain(format!("decay_scale must be positive, got {decay_scale}")));
    }
    if edge == limit {
        return Ok(0.0);
    }
    let dir = if limit > edge { 1.0 } else { -1.0 };
    let span = (limit - edge).abs();
    let width = 4.0 * decay_scale;
    let claimed_ratio = (-width / decay_scale).exp();
    let chunk_spec = spec.tightened(0.25);
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    let mut start = 0.0;
    for _ in 0..100_000 {
        let end = (start + width).min(span);
        let (lo, hi) = (edge + dir * start, edge + dir * end);
        let (a, b) = if lo < hi { (lo, hi) } else { (hi, lo) };
        // first chunk gets extra breakpoints to resolve edge behaviour
        let v = if start == 0.0 {
            let n = 4;
            let pts: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
            adaptive(&f, &pts, &chunk_spec)?.0
        } else {
            adaptive(&f, &[a, b], &chunk_spec)?.0
        };
        total += v;
        if end >= span {
            return Ok(total);
        }
        let observed = match prev {
            Some(p) if p != 0.0 => (v / p).abs(),
            _ => claimed_ratio,
        };
        let r = observed.max(claimed_ratio);
        let threshold = spec.absolute_floor.max(0.1 * spec.relative_tolerance * total.abs());
        if r < 1.0 && v.abs() * r / (1.0 - r) <= threshold && prev.is_some() {
            return Ok(total);
        }
        if v == 0.0 && total == 0.0 && start > 0.0 {
            return Ok(0.0);
        }
        prev = Some(v);
        start = end;
    }
    Err(Error::QuadratureNoConvergence {
        estimate: f64::INFINITY,
        tolerance: spec.relative_tolerance,
    })
}

/// ∫_a^∞ f(t) dt for an integrand decaying like exp(−t/decay_scale).
pub fn integrate_semiinfinite_radial<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay_scale: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("lower limit must be >= 0, got {a}")));
    }
    integrate_decaying(f, a, f64::INFINITY, decay_scale, spec)
}
