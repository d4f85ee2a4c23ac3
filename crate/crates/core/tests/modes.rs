use ebound::materials::Material;
use ebound::modes::imported::ProfileHeader;
use ebound::modes::*;
use ebound::numerics::{linspace, logspace, QuadratureSpec};
use ebound::physics::{electron_from_beta, ALPHA_FS};
use ebound::regions::DesignRegion;
use ebound::scans::{metal_hole_scan, MetalHoleGrid};
use ebound::sweep::Execution;
use ebound::Error;
use num_complex::Complex64;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn hollow_core_no_mode_near_vacuum() {
    let cfg = HollowCoreConfig {
        d: 0.05,
        d2: 0.1,
        eps: 1.0001,
    };
    assert!(matches!(solve_hollow_core(&cfg), Err(Error::NoMode(_))));
    assert!(matches!(
        solve_hollow_core(&HollowCoreConfig { d: 0.2, d2: 0.1, eps: 4.0 }),
        Err(Error::Domain(_))
    ));
}

#[test]
fn hollow_core_roots_and_fields() {
    let mut found = 0;
    for d2 in linspace(0.1, 1.5, 15) {
        let cfg = HollowCoreConfig { d: 0.05, d2, eps: 12.0 };
        let Ok(all) = solve_hollow_core_all(&cfg) else { continue };
        for m in &all {
            found += 1;
            assert!(m.dispersion_residual <= 1e-10);
            assert!(m.interface_mismatch() < 1e-8, "d2={d2}: {}", m.interface_mismatch());
            assert!(m.k_z > 1.0 && m.k_z < 12f64.sqrt());
            assert!(m.beta_match > 1.0 / 12f64.sqrt() && m.beta_match < 1.0);
            assert_eq!(m.multi_root, all.len() > 1);
        }
        // fundamental first
        assert!(all.windows(2).all(|w| w[0].k_z > w[1].k_z));
        assert_eq!(solve_hollow_core(&cfg).unwrap().k_z, all[0].k_z);
    }
    assert!(found > 0);
}

#[test]
fn hollow_core_ratio_reaches_seventy_percent() {
    let (chi, d) = (0.1, 1.0);
    let eps: f64 = 1.0 + chi;
    let lo = (0.1 / eps.sqrt()).log10();
    let hi = (1.0 / chi.sqrt()).log10();
    let mut best: f64 = 0.0;
    for t in logspace(lo, hi, 61) {
        let cfg = HollowCoreConfig { d, d2: d + t, eps };
        let Ok(m) = solve_hollow_core(&cfg) else { continue };
        let c = coupling_hollow_core(&m, &cfg, &spec()).unwrap();
        let r = c.ratio_to_bound.unwrap();
        assert!(r <= 1.0);
        best = best.max(r);
    }
    assert!((best - 0.72).abs() < 0.05, "{best}");
    // frozen value of this grid
    assert!((best - 0.71876).abs() < 1e-4, "{best}");
}

#[test]
fn hollow_core_coupling_vanishes_without_shell() {
    let chi: f64 = 3.0;
    let d = 0.2;
    let reference = {
        let cfg = HollowCoreConfig {
            d,
            d2: d + 0.5 / chi.sqrt(),
            eps: 1.0 + chi,
        };
        let m = solve_hollow_core(&cfg).unwrap();
        coupling_hollow_core(&m, &cfg, &spec()).unwrap().g_sq_per_length
    };
    let cfg = HollowCoreConfig {
        d,
        d2: d + 1e-4,
        eps: 1.0 + chi,
    };
    let thin = match solve_hollow_core(&cfg) {
        Ok(m) => coupling_hollow_core(&m, &cfg, &spec()).unwrap().g_sq_per_length,
        Err(Error::NoMode(_)) => 0.0,
        Err(e) => panic!("{e}"),
    };
    assert!(thin < 1e-3 * reference);
}

#[test]
fn hollow_core_coupling_matches_definition() {
    let cfg = HollowCoreConfig { d: 0.3, d2: 0.6, eps: 4.0 };
    let m = solve_hollow_core(&cfg).unwrap();
    let c = coupling_hollow_core(&m, &cfg, &spec()).unwrap();
    // |e_z(0)|² = 1/I0(αd)²
    let ez0 = m.fields(0.0).e_z;
    assert!((ez0.ln() - m.ln_e_z_axis()).abs() < 1e-12);
    assert!((c.g_sq_per_length / (ALPHA_FS * ez0 * ez0 / c.normalization_integral) - 1.0).abs() < 1e-12);
    // midpoint oracle of the energy integral, zone by zone
    let pi = std::f64::consts::PI;
    let rmax = 0.6 + 40.0 / (m.alpha * 2.0 * pi);
    let mut sum = 0.0;
    for (a, b, eps) in [(0.0, 0.3, 1.0), (0.3, 0.6, 4.0), (0.6, rmax, 1.0)] {
        let n = 100_000;
        let h = (b - a) / n as f64;
        for i in 0..n {
            let r = a + (i as f64 + 0.5) * h;
            let f = m.fields(r);
            sum += 2.0 * pi * r * eps * (f.e_z * f.e_z + f.e_rho * f.e_rho) * h;
        }
    }
    assert!((sum / c.normalization_integral - 1.0).abs() < 1e-6, "{sum} vs {}", c.normalization_integral);
}

#[test]
fn metal_hole_modes() {
    // above ω_sp (ω_p/ω < √2) a narrow hole guides an SPP; just below √2 the
    // root runs past the k_z ≤ 1001k scan window
    for wp in linspace(1.01, 1.40, 40) {
        let cfg = MetalHoleConfig {
            d: 0.01,
            omega_p_over_omega: wp,
        };
        let all = solve_metal_hole_all(&cfg).unwrap();
        for m in &all {
            assert!(m.dispersion_residual <= 1e-10);
            assert!(m.interface_mismatch() < 1e-8);
            assert!(m.k_z > 1.0);
        }
    }
    assert!(solve_metal_hole(&MetalHoleConfig { d: 0.1, omega_p_over_omega: 0.9 }).is_err());
}

#[test]
fn metal_hole_no_mode_above_surface_plasmon_for_wide_holes() {
    // ω slightly above ω_p/√2 means ω_p/ω slightly below √2
    for wp in [1.30, 1.35, 1.38] {
        let cfg = MetalHoleConfig {
            d: 0.5,
            omega_p_over_omega: wp,
        };
        assert!(matches!(solve_metal_hole(&cfg), Err(Error::NoMode(_))), "wp={wp}");
    }
    // a narrow hole does support it
    assert!(solve_metal_hole(&MetalHoleConfig { d: 0.05, omega_p_over_omega: 1.35 }).is_ok());
    let dc = light_line_radius(-1.0).unwrap();
    assert!((dc / 0.27 - 1.0).abs() < 0.1, "{dc}");
    assert!((dc - 0.268602).abs() < 1e-5);
    assert!(light_line_radius(0.5).is_err());
}

#[test]
fn metal_hole_tends_to_light_line_for_perfect_conductor() {
    // below ω_sp the hole mode survives until the light-line radius for
    // ε = 1 − ω_p²/ω² reaches d; k_z falls to k on the way
    let d = 1.0;
    let (mut lo, mut hi) = (1.5_f64, 10.0_f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if light_line_radius(1.0 - mid * mid).unwrap() < d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let wp_star = lo;
    let kz: Vec<f64> = [0.5, 0.8, 0.95, 0.999]
        .iter()
        .map(|&f| {
            let wp = 1.5 + f * (wp_star - 1.5);
            solve_metal_hole(&MetalHoleConfig { d, omega_p_over_omega: wp }).unwrap().k_z
        })
        .collect();
    assert!(kz.windows(2).all(|w| w[1] < w[0]), "{kz:?}");
    assert!(kz[3] > 1.0 && kz[3] < 1.001, "{kz:?}");
    let past = MetalHoleConfig {
        d,
        omega_p_over_omega: wp_star * 1.01,
    };
    assert!(matches!(solve_metal_hole(&past), Err(Error::NoMode(_))));
}

#[test]
fn metal_hole_coupling_norm_includes_every_term() {
    let cfg = MetalHoleConfig {
        d: 0.05,
        omega_p_over_omega: 1.2,
    };
    let m = solve_metal_hole(&cfg).unwrap();
    let c = coupling_metal_hole(&m, &cfg, &spec()).unwrap();
    let pi = std::f64::consts::PI;
    let kappa = m.kappa * 2.0 * pi;
    let mut sum = 0.0;
    for (a, b, metal) in [(0.0, 0.05, false), (0.05, 0.05 + 40.0 / kappa, true)] {
        let n = 200_000;
        let h = (b - a) / n as f64;
        for i in 0..n {
            let r = a + (i as f64 + 0.5) * h;
            let f = m.fields(r);
            let e2 = f.e_z * f.e_z + f.e_rho * f.e_rho;
            let extra = if metal { 1.2 * 1.2 * e2 } else { 0.0 };
            sum += pi * r * (e2 + f.h_phi * f.h_phi + extra) * h;
        }
    }
    assert!((sum / c.normalization_integral - 1.0).abs() < 1e-5);
    let r = c.ratio_to_bound.unwrap();
    assert!(r > 0.0 && r <= 1.0);
    let b = c.bound.unwrap();
    assert_eq!(b.geometric.region, DesignRegion::CylinderExterior { d: 0.05 });
}

#[test]
fn metal_hole_subrelativistic_peak_only_for_narrow_holes() {
    let grid = MetalHoleGrid {
        ds: vec![0.01, 0.03, 0.06, 0.2, 0.5],
        omega_ps: logspace(0.0, 2.5f64.log10(), 600),
    };
    let rows = metal_hole_scan(&grid, &spec(), Execution::Parallel).unwrap();
    for &d in &grid.ds {
        let mut rs: Vec<_> = rows.iter().filter(|r| r.d_over_lambda == d).collect();
        rs.sort_by(|a, b| a.beta_match.total_cmp(&b.beta_match));
        let (imax, gmax) = rs
            .iter()
            .map(|r| r.g_per_sqrt_l)
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let interior = imax > 0 && imax + 1 < rs.len() && gmax > 1.05 * rs.last().unwrap().g_per_sqrt_l;
        assert_eq!(interior, d < 0.1, "d={d}");
        assert!(rs.iter().all(|r| r.ratio <= 1.0));
    }
}

fn header(nx: usize, ny: usize, dx: f64, kz: f64) -> ProfileHeader {
    ProfileHeader {
        nx,
        ny,
        dx_over_lambda: dx,
        dy_over_lambda: dx,
        omega_hz: 1.934e14,
        kz_over_k: kz,
        origin: [-(nx as f64 - 1.0) * dx / 2.0, -(ny as f64 - 1.0) * dx / 2.0],
    }
}

#[test]
fn imported_uniform_box() {
    let h = header(21, 11, 0.05, 2.0);
    let p = ImportedModeProfile::from_fn(h, [0.0, 0.0], |_, _| {
        ([Complex64::default(), Complex64::default(), Complex64::new(1.0, 0.0)], 1.0)
    });
    let e = electron_from_beta(0.5, None).unwrap();
    let c = coupling_from_imported_mode(&p, &e, None, &spec()).unwrap();
    let area = 20.0 * 0.05 * 10.0 * 0.05;
    assert!((c.coupling.g_sq_per_length / (ALPHA_FS / area) - 1.0).abs() < 1e-12);
    assert!(c.warning.is_none());
    assert!(c.coupling.ratio_to_bound.is_none());
}

#[test]
fn imported_symmetry_forbidden() {
    // W_z odd in y: zero on the electron row
    let h = header(21, 21, 0.05, 2.0);
    let p = ImportedModeProfile::from_fn(h, [0.1, 0.0], |x, y| {
        (
            [Complex64::new(1.0, 0.0), Complex64::default(), Complex64::new(y * (-x * x).exp(), 0.0)],
            2.0,
        )
    });
    let e = electron_from_beta(0.5, None).unwrap();
    let c = coupling_from_imported_mode(&p, &e, None, &spec()).unwrap();
    assert_eq!(c.coupling.g_sq_per_length, 0.0);
}

#[test]
fn imported_grid_convergence() {
    let w = |x: f64, y: f64| {
        let g = (-(x * x + y * y) / (2.0 * 0.15 * 0.15)).exp();
        (
            [Complex64::new(0.3 * g, 0.0), Complex64::new(0.0, 0.2 * g), Complex64::new(g, 0.1 * g)],
            if x.abs() < 0.2 { 4.0 } else { 1.0 },
        )
    };
    let e = electron_from_beta(0.5, None).unwrap();
    let coarse = ImportedModeProfile::from_fn(header(41, 41, 0.025, 2.0), [0.013, -0.02], w);
    let fine = ImportedModeProfile::from_fn(header(81, 81, 0.0125, 2.0), [0.013, -0.02], w);
    let a = coupling_from_imported_mode(&coarse, &e, None, &spec()).unwrap().coupling.g_sq_per_length;
    let b = coupling_from_imported_mode(&fine, &e, None, &spec()).unwrap().coupling.g_sq_per_length;
    assert!((a / b - 1.0).abs() < 0.01, "{a} vs {b}");
}

#[test]
fn imported_round_trip_and_errors() {
    let p = ImportedModeProfile::from_fn(header(4, 3, 0.1, 1.9), [0.0, 0.0], |x, y| {
        (
            [Complex64::new(x, y), Complex64::new(-y, 0.5), Complex64::new(1.0 + x * y, -x)],
            1.0 + x * x,
        )
    });
    let text = p.to_text();
    let q = ImportedModeProfile::parse(&text, [0.0, 0.0]).unwrap();
    assert_eq!(p, q);

    let e = electron_from_beta(0.5, None).unwrap();
    let out = ImportedModeProfile::parse(&text, [5.0, 0.0]).unwrap();
    assert!(matches!(
        coupling_from_imported_mode(&out, &e, None, &spec()),
        Err(Error::OutsideGrid { .. })
    ));
    // 1/β = 2 vs k_z/k = 1.9: 5% off, no warning; β = 0.9 is far off
    assert!(coupling_from_imported_mode(&q, &e, None, &spec()).unwrap().warning.is_none());
    let fast = electron_from_beta(0.9, None).unwrap();
    let c = coupling_from_imported_mode(&q, &fast, None, &spec()).unwrap();
    assert!(c.warning.is_some());

    let zero = ImportedModeProfile::from_fn(header(4, 3, 0.1, 2.0), [0.0, 0.0], |_, _| ([Complex64::default(); 3], 1.0));
    assert!(matches!(
        coupling_from_imported_mode(&zero, &e, None, &spec()),
        Err(Error::ZeroNormalization)
    ));

    let mut lines: Vec<&str> = text.lines().collect();
    lines.swap(1, 2);
    assert!(matches!(ImportedModeProfile::parse(&lines.join("\n"), [0.0, 0.0]), Err(Error::Parse(_))));
    let mut bad = p.clone();
    bad.eps_map[5] = -1.0;
    assert!(matches!(ImportedModeProfile::parse(&bad.to_text(), [0.0, 0.0]), Err(Error::Domain(_))));
    let short: String = text.lines().take(5).collect::<Vec<_>>().join("\n");
    assert!(matches!(ImportedModeProfile::parse(&short, [0.0, 0.0]), Err(Error::Parse(_))));
}

#[test]
fn imported_ratio_against_bound() {
    let p = ImportedModeProfile::from_fn(header(41, 41, 0.02, 2.0), [0.0, 0.0], |x, y| {
        let g = (-(x * x + y * y) / 0.02).exp();
        ([Complex64::default(), Complex64::default(), Complex64::new(g, 0.0)], 1.0)
    });
    let e = electron_from_beta(0.5, None).unwrap();
    let m = Material::NonDispersive { chi: 11.0 };
    let r = DesignRegion::HalfSpace { d: 0.05 };
    let c = coupling_from_imported_mode(&p, &e, Some((&m, &r)), &spec()).unwrap();
    let b = c.coupling.bound.as_ref().unwrap();
    let want = (c.coupling.g_sq_per_length / b.g_ub_sq).sqrt();
    assert_eq!(c.coupling.ratio_to_bound, Some(want));
}
