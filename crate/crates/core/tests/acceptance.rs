//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any FAIL.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ebound::bounds::{coupling_bound, max_interaction_length};
use ebound::materials::Material;
use ebound::modes::*;
use ebound::numerics::QuadratureSpec;
use ebound::physics::{electron_from_beta, evanescent_scales, EvanescentScales, Length};
use ebound::regions::*;
use ebound::scans::*;
use ebound::spectra::*;
use ebound::sweep::Execution;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const LAMBDA_M: f64 = 1550e-9;

type Outcome = Result<String, String>;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn check(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn si() -> Material {
    Material::NonDispersive { chi: 11.0 }
}

fn c1() -> Outcome {
    let e = electron_from_beta(0.253, None).unwrap();
    let r = DesignRegion::TwoSidedSlot {
        d: 30e-9 / LAMBDA_M,
        duty: 0.6,
    };
    let g = coupling_bound(&si(), &r, &e, Length::Meters(LAMBDA_M), Some(LAMBDA_M), &spec()).unwrap().g_ub();
    check((g / 1.42 - 1.0).abs() < 0.1, format!("g_ub = {g:.4}"))
}

fn c2() -> Outcome {
    let mut worst = f64::INFINITY;
    for i in 0..7 {
        let beta = 0.10 + 0.05 * i as f64;
        let e = electron_from_beta(beta, None).unwrap();
        let b = coupling_bound(&si(), &DesignRegion::HalfSpace { d: 0.02 }, &e, Length::Lambda(1.0), None, &spec()).unwrap();
        worst = worst.min(b.g_ub());
    }
    check(worst > 1.0, format!("min g_ub over beta in [0.10, 0.40] = {worst:.4}"))
}

fn c3() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let pair = (0.05f64..0.95, 0.005f64..0.3);
    let sin = Material::NonDispersive { chi: 3.0 };
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..10 {
        let (beta, d) = pair.new_tree(&mut runner).unwrap().current();
        let e = electron_from_beta(beta, None).unwrap();
        let r = DesignRegion::HalfSpace { d };
        let a = coupling_bound(&si(), &r, &e, Length::Lambda(1.0), None, &spec()).unwrap().g_ub();
        let b = coupling_bound(&sin, &r, &e, Length::Lambda(1.0), None, &spec()).unwrap().g_ub();
        lo = lo.min(a / b);
        hi = hi.max(a / b);
    }
    check(
        (lo - 2.117).abs() <= 0.01 && (hi - 2.117).abs() <= 0.01 && hi - lo < 1e-12,
        format!("Si/SiN ratio in [{lo:.6}, {hi:.6}] over 10 random (beta, d)"),
    )
}

fn c4() -> Outcome {
    let peak = |d: f64| find_subrelativistic_peak(&DesignRegion::HalfSpace { d }, &spec()).unwrap().is_some();
    let (p02, p05, p10) = (peak(0.02), peak(0.05), peak(0.1));
    let (mut a, mut b) = (0.02, 0.1);
    while b - a > 1e-3 {
        let m = 0.5 * (a + b);
        if peak(m) {
            a = m;
        } else {
            b = m;
        }
    }
    let t = 0.5 * (a + b);
    check(
        p02 && p05 && !p10 && (0.045..=0.075).contains(&t),
        format!("peak at 0.02: {p02}, 0.05: {p05}, 0.1: {p10}; threshold d = {t:.4}"),
    )
}

fn c5() -> Outcome {
    let rows = metal_hole_scan(&MetalHoleGrid::reference(), &spec(), Execution::Parallel).unwrap();
    let max_ratio = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let a = rows.iter().all(|r| r.ratio <= 1.0);
    let best = rows
        .iter()
        .filter(|r| (r.d_over_lambda - 0.01).abs() < 1e-12 && (0.3..=0.5).contains(&r.beta_match))
        .map(|r| r.ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    let slowest = rows.iter().min_by(|x, y| x.beta_match.total_cmp(&y.beta_match)).unwrap();
    let target = 3f64.sqrt() / 2.0;
    let c = (slowest.ratio / target - 1.0).abs() < 0.01;
    // a lone root above ω_sp is the hole SPP; pairs near ω_sp are the
    // light-line branch that exists at any radius
    let single = |d: f64| rows.iter().any(|r| r.d_over_lambda == d && r.above_omega_sp && r.n_roots == 1);
    let ds = MetalHoleGrid::reference().ds;
    let last_with = ds.iter().copied().filter(|&d| single(d)).fold(0.0, f64::max);
    let first_without = ds.iter().copied().filter(|&d| d > last_with && !single(d)).fold(f64::INFINITY, f64::min);
    let cutoff = light_line_radius(-1.0).unwrap();
    let window = 0.243..=0.297;
    let dd = window.contains(&cutoff) && last_with < *window.end() && first_without > *window.start();
    check(
        a && best > 0.99 && c && dd,
        format!(
            "(a) {} rows, max ratio {max_ratio:.6}; (b) max at d=0.01, beta in [0.3,0.5]: {best:.6}; \
             (c) ratio at beta_match={:.2e}: {:.6} vs {target:.6}; (d) cutoff {cutoff:.4}, \
             above-sp SPP up to d={last_with:.4}, none from d={first_without:.4}",
            rows.len(),
            slowest.beta_match,
            slowest.ratio
        ),
    )
}

fn c6() -> Outcome {
    let grid = HollowCoreGrid {
        all_roots: true,
        ..HollowCoreGrid::reference()
    };
    let rows = hollow_core_scan(&grid, &spec(), Execution::Parallel).unwrap();
    let worst = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    let all_ok = rows.iter().all(|r| r.ratio <= 1.0);
    let line = HollowCoreGrid {
        chis: vec![0.1],
        ds: vec![1.0],
        n_d2: 61,
        all_roots: false,
    };
    let fund = hollow_core_scan(&line, &spec(), Execution::Parallel).unwrap();
    let best = fund.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    check(
        all_ok && (best - 0.72).abs() <= 0.05,
        format!("max ratio at chi=0.1, d=1: {best:.5}; {} rows on the full grid, max ratio {worst:.5}", rows.len()),
    )
}

fn c7() -> Outcome {
    let e = electron_from_beta(0.253, Some(Length::Meters(10e-9))).unwrap();
    let l = max_interaction_length(&e, Length::Meters(30e-9), Some(LAMBDA_M)).unwrap().l_max_lambda.unwrap();
    check((l / 130.0 - 1.0).abs() <= 0.03, format!("L_max = {l:.2} lambda"))
}

fn c8() -> Outcome {
    let wm = 1.0;
    let v = 0.5;
    let m = SpectrumMode {
        omega_m: wm,
        gamma_d: 1e-4 * wm,
        z_profile: ZProfile {
            u0: 1.0,
            k_m: wm / v,
            length: 20.0,
        },
        g_m_sq: 0.04,
    };
    let r = peak_integral(&[m], 0, 200.0 * m.gamma_d, v, &spec()).unwrap() / m.g_m_sq;
    check((r - 1.0).abs() <= 0.01, format!("integral / g_m_sq = {r:.5}"))
}

fn model(v_g: f64, d2: f64, d3: f64) -> DispersionModel {
    DispersionModel {
        k0: 2.0,
        omega0: 2.0,
        v_g,
        d2w_dk2: d2,
        d3w_dk3: d3,
    }
}

fn c9() -> Outcome {
    let cmp = |m: DispersionModel, l: f64| {
        let n = n_eff_numeric(&m, 1.0, l, &spec()).unwrap();
        let c = n_eff_closed(&m, 1.0, l).unwrap();
        (n / c.value - 1.0).abs()
    };
    let lin = [50.0, 100.0, 400.0].map(|l| cmp(model(0.5, 0.0, 0.0), l)).into_iter().fold(0.0, f64::max);
    let quad = cmp(model(1.0, 1.0, 0.0), 100.0);
    let cub = cmp(model(1.0, 0.0, 1.0), 100.0);
    check(
        lin <= 0.01 && quad <= 0.05 && cub <= 0.05,
        format!("relative deviation linear {lin:.1e}, quadratic {quad:.1e}, cubic {cub:.1e}"),
    )
}

fn c10() -> Outcome {
    let mut notes = Vec::new();
    // cylinder closed form against quadrature
    let mut cyl = 0.0f64;
    for beta in [0.2, 0.5, 0.8] {
        let s = EvanescentScales::unit(beta).unwrap();
        for d in [0.01, 0.1, 0.5] {
            let q = geometric_factor(&DesignRegion::CylinderExterior { d }, &s, None, &spec()).unwrap().value;
            cyl = cyl.max((q / cylinder_closed_form(&s, d) - 1.0).abs());
        }
    }
    notes.push(format!("cylinder {cyl:.1e}"));
    // mode residuals and field continuity
    let mut modes = Vec::new();
    for (d, t) in [(0.3, 0.2), (1.0, 0.5), (0.1, 1.0)] {
        modes.extend(solve_hollow_core_all(&HollowCoreConfig { d, d2: d + t, eps: 4.0 }).unwrap());
    }
    for (d, wp) in [(0.01, 1.2), (0.05, 1.35), (1.0, 2.0)] {
        modes.extend(solve_metal_hole_all(&MetalHoleConfig { d, omega_p_over_omega: wp }).unwrap());
    }
    let res = modes.iter().map(|m| m.dispersion_residual.abs()).fold(0.0, f64::max);
    let cont = modes.iter().map(|m| m.interface_mismatch()).fold(0.0, f64::max);
    notes.push(format!("{} modes: residual {res:.1e}, continuity {cont:.1e}", modes.len()));
    // joint scaling of geometry and wavelength
    let mut scale = 0.0f64;
    let e = electron_from_beta(0.4, None).unwrap();
    for r in [
        DesignRegion::HalfSpace { d: 0.05 },
        DesignRegion::TwoSidedSlot { d: 0.05, duty: 0.6 },
        DesignRegion::CylinderExterior { d: 0.05 },
        DesignRegion::Annulus { d: 0.05, d2: 0.2 },
    ] {
        let base = coupling_bound(&si(), &r, &e, Length::Meters(LAMBDA_M), Some(LAMBDA_M), &spec()).unwrap().g_ub_sq;
        for s in [0.5, 2.0, 10.0] {
            let lam = s * LAMBDA_M;
            let g = coupling_bound(&si(), &r, &e, Length::Meters(lam), Some(lam), &spec()).unwrap().g_ub_sq;
            let geo_s = geometric_factor(&r, &evanescent_scales(&e, s).unwrap(), None, &spec()).unwrap().value;
            let geo_1 = geometric_factor(&r, &EvanescentScales::unit(0.4).unwrap(), None, &spec()).unwrap().value;
            scale = scale.max((g / base - 1.0).abs()).max((geo_s / geo_1 - 1.0).abs());
        }
    }
    notes.push(format!("scaling {scale:.1e}"));
    // Lorentz without oscillator strength
    let r = DesignRegion::HalfSpace { d: 0.04 };
    let nd = coupling_bound(&Material::NonDispersive { chi: 3.0 }, &r, &e, Length::Lambda(1.0), None, &spec()).unwrap();
    let lz = Material::Lorentz {
        eps_b: 4.0,
        omega_p: 0.0,
        omega_0: 0.7,
    };
    let lb = coupling_bound(&lz, &r, &e, Length::Lambda(1.0), None, &spec()).unwrap();
    let lorentz = (lb.g_ub_sq / nd.g_ub_sq - 2.0).abs();
    notes.push(format!("Lorentz {lorentz:.1e}"));
    // identical output across worker counts
    let grid = MetalHoleGrid {
        ds: vec![0.01, 0.1, 0.5],
        omega_ps: ebound::numerics::linspace(1.01, 2.5, 60),
    };
    let runs: Vec<String> = [Execution::Sequential, Execution::Workers(2), Execution::Workers(4), Execution::Parallel]
        .into_iter()
        .map(|x| serde_json::to_string(&metal_hole_scan(&grid, &spec(), x).unwrap()).unwrap())
        .collect();
    let geo: Vec<String> = [Execution::Sequential, Execution::Workers(3)]
        .into_iter()
        .map(|x| {
            let rows = geo_map(&DesignRegion::HalfSpace { d: 0.1 }, &[0.1, 0.5, 0.9], &[0.01, 0.1, 0.3], None, &spec(), x).unwrap();
            serde_json::to_string(&rows).unwrap()
        })
        .collect();
    let det = runs.windows(2).all(|w| w[0] == w[1]) && geo[0] == geo[1];
    notes.push(format!("deterministic {det}"));
    check(
        cyl < 1e-8 && res <= 1e-10 && cont <= 1e-8 && scale < 1e-9 && lorentz < 1e-12 && det,
        notes.join("; "),
    )
}

fn main() {
    let criteria: [(fn() -> Outcome, Duration); 10] = [
        (c1, Duration::from_secs(1)),
        (c2, Duration::from_secs(5)),
        (c3, Duration::from_secs(60)),
        (c4, Duration::from_secs(60)),
        (c5, Duration::from_secs(300)),
        (c6, Duration::from_secs(600)),
        (c7, Duration::from_secs(1)),
        (c8, Duration::from_secs(1)),
        (c9, Duration::from_secs(10)),
        (c10, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let dt = t.elapsed();
        let (ok, msg) = match out {
            Ok(m) if dt <= *limit => (true, m),
            Ok(m) => (false, format!("{m}; over the {:?} budget", limit)),
            Err(m) => (false, m),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2}: {} ({:.2} s) {msg}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
