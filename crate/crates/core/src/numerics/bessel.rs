//! Bessel functions of integer order 0..=2 for real positive arguments.
//!
//! Modified functions use a power series below a switch point and either an
//! asymptotic series (I) or Steed's continued fraction (K) above it. Ordinary
//! J/Y use series, Steed's CF1/CF2 pair, then Hankel asymptotics.
//! The `*e` variants are exponentially scaled: `k0e(x) = K0(x)·eˣ`,
//! `i0e(x) = I0(x)·e⁻ˣ`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-17;
// continued fractions stall at a few ulp of 1
const CF_EPS: f64 = 4e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;

/// Seam between the I series and its asymptotic expansion.
const I_SWITCH: f64 = 30.0;
/// Seam between the K series and Steed's CF2.
const K_SWITCH: f64 = 2.0;
const JY_SERIES_MAX: f64 = 2.0;
const JY_ASYMPTOTIC_MIN: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum JyKind {
    J,
    Y,
}

fn i_series(nu: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = if nu == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let nuf = nu as f64;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + nuf));
        sum += term;
        if term <= sum * EPS {
            break;
        }
    }
    sum
}

fn i_asymptotic_scaled(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= sum.abs() * EPS {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// I0(x)·e^(−x), x ≥ 0.
pub fn i0e(x: f64) -> f64 {
    if x <= I_SWITCH {
        i_series(0, x) * (-x).exp()
    } else {
        i_asymptotic_scaled(0, x)
    }
}

/// I1(x)·e^(−x), x ≥ 0.
pub fn i1e(x: f64) -> f64 {
    if x <= I_SWITCH {
        i_series(1, x) * (-x).exp()
    } else {
        i_asymptotic_scaled(1, x)
    }
}

pub fn i0(x: f64) -> f64 {
    if x <= I_SWITCH {
        i_series(0, x)
    } else {
        i_asymptotic_scaled(0, x) * x.exp()
    }
}

pub fn i1(x: f64) -> f64 {
    if x <= I_SWITCH {
        i_series(1, x)
    } else {
        i_asymptotic_scaled(1, x) * x.exp()
    }
}

// Series for K0, K1 with 0 < x <= K_SWITCH (unscaled).
fn k01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let ln_half = (0.5 * x).ln();

    // K0 = -(ln(x/2)+γ) I0 + Σ H_k q^k/(k!)²
    let mut t0 = 1.0;
    let mut harmonic = 0.0;
    let mut s0 = 0.0;
    let mut i0s = 1.0;
    // K1 = 1/x + ln(x/2) I1 − (x/4) Σ (ψ(k+1)+ψ(k+2)) q^k/(k!(k+1)!)
    let mut t1 = 1.0;
    let mut s1 = 2.0 * (-EULER_GAMMA) + 1.0;
    let mut i1s = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        harmonic += 1.0 / kf;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        i0s += t0;
        i1s += t1;
        let d0 = harmonic * t0;
        let d1 = (2.0 * (harmonic - EULER_GAMMA) + 1.0 / (kf + 1.0)) * t1;
        s0 += d0;
        s1 += d1;
        if t0 <= EPS * i0s && d1.abs() <= EPS * s1.abs() {
            break;
        }
    }
    let i1v = 0.5 * x * i1s;
    let k0 = -(ln_half + EULER_GAMMA) * i0s + s0;
    let k1 = 1.0 / x + ln_half * i1v - 0.25 * x * s1;
    (k0, k1)
}

// Steed's CF2 (Temme) for x >= K_SWITCH; returns eˣK0, eˣK1.
fn k01_cf_scaled(x: f64) -> (f64, f64) {
    let xi = 1.0 / x;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAXIT {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < CF_EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) * xi;
    (k0, k1)
}

/// (eˣK0(x), eˣK1(x)) for x > 0.
pub fn k01e(x: f64) -> (f64, f64) {
    if x <= K_SWITCH {
        let (k0, k1) = k01_series(x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        k01_cf_scaled(x)
    }
}

pub fn k0e(x: f64) -> f64 {
    k01e(x).0
}

pub fn k1e(x: f64) -> f64 {
    k01e(x).1
}

pub fn k2e(x: f64) -> f64 {
    let (k0, k1) = k01e(x);
    k0 + 2.0 * k1 / x
}

pub fn k0(x: f64) -> f64 {
    if x <= K_SWITCH {
        k01_series(x).0
    } else {
        k01_cf_scaled(x).0 * (-x).exp()
    }
}

pub fn k1(x: f64) -> f64 {
    if x <= K_SWITCH {
        k01_series(x).1
    } else {
        k01_cf_scaled(x).1 * (-x).exp()
    }
}

pub fn k2(x: f64) -> f64 {
    if x <= K_SWITCH {
        let (k0, k1) = k01_series(x);
        k0 + 2.0 * k1 / x
    } else {
        k2e(x) * (-x).exp()
    }
}

fn jy01_series(x: f64) -> (f64, f64, f64, f64) {
    let q = -0.25 * x * x;
    let ln_half = (0.5 * x).ln();
    let mut t0 = 1.0;
    let mut t1 = 1.0;
    let mut j0s = 1.0;
    let mut j1s = 1.0;
    let mut harmonic = 0.0;
    let mut y0s = 0.0;
    let mut y1s = 2.0 * (-EULER_GAMMA) + 1.0;
    for k in 1..200 {
        let kf = k as f64;
        harmonic += 1.0 / kf;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        j0s += t0;
        j1s += t1;
        y0s += harmonic * t0;
        y1s += (2.0 * (harmonic - EULER_GAMMA) + 1.0 / (kf + 1.0)) * t1;
        if t0.abs() <= EPS * j0s.abs() && t1.abs() <= EPS * j1s.abs() {
            break;
        }
    }
    let j1v = 0.5 * x * j1s;
    let y0 = (2.0 / PI) * ((ln_half + EULER_GAMMA) * j0s - y0s);
    let y1 = -2.0 / (PI * x) + (2.0 / PI) * ln_half * j1v - (0.5 * x / PI) * y1s;
    (j0s, j1v, y0, y1)
}

// Steed's CF1 + CF2 for ν = 0 (Numerical Recipes `bessjy` with nl = 0).
fn jy01_steed(x: f64) -> (f64, f64, f64, f64) {
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;
    let mut isign = 1.0;
    let mut h = FPMIN;
    let mut b = 0.0;
    let mut d = 0.0;
    let mut c = h;
    for _ in 1..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < CF_EPS {
            break;
        }
    }
    let rjl = isign * FPMIN;
    let rjpl = h * rjl;
    let f = rjpl / rjl;

    let mut a = 0.25;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < CF_EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < 0.0 {
        rjmu = -rjmu;
    }
    let rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let scale = rjmu / rjl;
    let j0 = rjl * scale;
    let j0p = rjpl * scale;
    (j0, -j0p, rymu, -rymup)
}

fn jy01_asymptotic(x: f64) -> (f64, f64, f64, f64) {
    let pq = |nu: u32| {
        let mu = 4.0 * (nu * nu) as f64;
        let mut p = 1.0;
        let mut q = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            let odd = (2 * k - 1) as f64;
            let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
            if k > 2 && next.abs() >= term.abs() {
                break;
            }
            term = next;
            // a_k/x^k enters P with sign (−1)^(k/2) for even k, Q with (−1)^((k−1)/2) for odd k
            match k % 4 {
                1 => q += term,
                2 => p -= term,
                3 => q -= term,
                _ => p += term,
            }
            if term.abs() < EPS {
                break;
            }
        }
        (p, q)
    };
    let (s, c) = x.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    let (p0, q0) = pq(0);
    let (p1, q1) = pq(1);
    // χ0 = x − π/4, χ1 = x − 3π/4
    let c0 = (c + s) * FRAC_1_SQRT_2;
    let s0 = (s - c) * FRAC_1_SQRT_2;
    let c1 = (s - c) * FRAC_1_SQRT_2;
    let s1 = -(s + c) * FRAC_1_SQRT_2;
    (
        amp * (p0 * c0 - q0 * s0),
        amp * (p1 * c1 - q1 * s1),
        amp * (p0 * s0 + q0 * c0),
        amp * (p1 * s1 + q1 * c1),
    )
}

/// (J0, J1, Y0, Y1) at x > 0.
pub fn jy01(x: f64) -> (f64, f64, f64, f64) {
    if x < JY_SERIES_MAX {
        jy01_series(x)
    } else if x <= JY_ASYMPTOTIC_MIN {
        jy01_steed(x)
    } else {
        jy01_asymptotic(x)
    }
}

pub fn j0(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        jy01(x.abs()).0
    }
}

pub fn j1(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * jy01(x.abs()).1
    }
}

pub fn y0(x: f64) -> f64 {
    jy01(x).2
}

pub fn y1(x: f64) -> f64 {
    jy01(x).3
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires x > 0, got {x}")))
    }
}

/// K_order(x) for order ∈ {0, 1, 2}. Underflows to 0 beyond x ≈ 700.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    check_positive(x, "bessel_k")?;
    match order {
        0 => Ok(k0(x)),
        1 => Ok(k1(x)),
        2 => Ok(k2(x)),
        _ => Err(Error::Domain(format!("bessel_k order {order} not supported"))),
    }
}

/// eˣ·K_order(x).
pub fn bessel_k_scaled(order: u32, x: f64) -> Result<f64> {
    check_positive(x, "bessel_k_scaled")?;
    match order {
        0 => Ok(k0e(x)),
        1 => Ok(k1e(x)),
        2 => Ok(k2e(x)),
        _ => Err(Error::Domain(format!("bessel_k order {order} not supported"))),
    }
}

/// I_order(x) for order ∈ {0, 1}. Overflows to +∞ beyond x ≈ 713; use
/// [`bessel_i_scaled`] there.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_i requires x >= 0, got {x}")));
    }
    match order {
        0 => Ok(i0(x)),
        1 => Ok(i1(x)),
        _ => Err(Error::Domain(format!("bessel_i order {order} not supported"))),
    }
}

/// e⁻ˣ·I_order(x).
pub fn bessel_i_scaled(order: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_i requires x >= 0, got {x}")));
    }
    match order {
        0 => Ok(i0e(x)),
        1 => Ok(i1e(x)),
        _ => Err(Error::Domain(format!("bessel_i order {order} not supported"))),
    }
}

pub fn bessel_jy(kind: JyKind, order: u32, x: f64) -> Result<f64> {
    if order > 1 {
        return Err(Error::Domain(format!("bessel_jy order {order} not supported")));
    }
    match kind {
        JyKind::J => {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::Domain(format!("bessel_jy(J) requires x >= 0, got {x}")));
            }
            Ok(if order == 0 { j0(x) } else { j1(x) })
        }
        JyKind::Y => {
            check_positive(x, "bessel_jy(Y)")?;
            Ok(if order == 0 { y0(x) } else { y1(x) })
        }
    }
}
