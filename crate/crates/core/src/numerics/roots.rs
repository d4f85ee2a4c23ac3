//! Bracketed root finding (Brent) and sign-change scans.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    /// Relative tolerance on the abscissa.
    pub tolerance: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, tolerance: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Domain(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
        }
        if !(tolerance >= 0.0) {
            return Err(Error::Domain("bracket tolerance must be >= 0".into()));
        }
        Ok(Self { lo, hi, tolerance })
    }
}

const MAX_ITER: usize = 300;

/// Brent's method. The returned abscissa always lies in `[lo, hi]`.
pub fn find_root_bracketed<F: Fn(f64) -> f64>(f: F, bracket: RootBracket) -> Result<f64> {
    let RootBracket { lo, hi, tolerance } = bracket;
    if !(lo < hi) {
        return Err(Error::Domain(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * tolerance * b.abs();
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b.clamp(lo, hi));
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        b = b.clamp(lo, hi);
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::RootNoConvergence(MAX_ITER));
        }
    }
    Err(Error::RootNoConvergence(MAX_ITER))
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `n` points from 10^a to 10^b.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a, b, n).into_iter().map(|e| 10f64.powf(e)).collect()
}

/// Adjacent grid pairs across which `values` changes sign.
pub fn sign_change_brackets(xs: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    xs.windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0].is_finite() && v[1].is_finite() && (v[0] == 0.0 || v[0].signum() != v[1].signum()))
        .map(|(x, _)| (x[0], x[1]))
        .collect()
}

/// Golden-section maximisation of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol * (a.abs() + b.abs()).max(1e-300) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_and_sqrt2() {
        let r = find_root_bracketed(f64::cos, RootBracket::new(1.0, 2.0, 1e-15).unwrap()).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let r = find_root_bracketed(|x| x * x - 2.0, RootBracket::new(1.0, 2.0, 1e-15).unwrap()).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn no_sign_change() {
        let e = find_root_bracketed(|x| x * x + 1.0, RootBracket::new(-1.0, 1.0, 1e-12).unwrap());
        assert!(matches!(e, Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn golden() {
        let x = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
    }
}
