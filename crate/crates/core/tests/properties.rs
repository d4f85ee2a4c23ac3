use ebound::bounds::coupling_bound;
use ebound::materials::*;
use ebound::modes::*;
use ebound::numerics::QuadratureSpec;
use ebound::physics::{electron_from_beta, evanescent_scales, EvanescentScales, Length};
use ebound::regions::*;
use ebound::spectra::{spectrum_density, SpectrumMode, ZProfile};
use ebound::sweep::{map_indexed, Execution};
use ebound::Error;
use proptest::prelude::*;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn region(kind: u8, d: f64) -> DesignRegion {
    match kind % 4 {
        0 => DesignRegion::HalfSpace { d },
        1 => DesignRegion::TwoSidedSlot { d, duty: 0.6 },
        2 => DesignRegion::CylinderExterior { d },
        _ => DesignRegion::Annulus { d, d2: 2.5 * d },
    }
}

const SCALES: [f64; 3] = [0.5, 2.0, 10.0];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evanescent_products_scale_free(beta in 0.01f64..0.99, s in 0.01f64..100.0) {
        let e = electron_from_beta(beta, None).unwrap();
        let a = evanescent_scales(&e, 1.0).unwrap();
        let b = evanescent_scales(&e, s).unwrap();
        prop_assert!(rel(b.alpha_e * s, a.alpha_e) < 1e-14);
        prop_assert!(rel(b.k_e * s, a.k_e) < 1e-14);
    }

    #[test]
    fn alpha_over_k_decreases_with_beta(b1 in 0.01f64..0.98, db in 1e-4f64..0.01) {
        let lo = EvanescentScales::unit(b1).unwrap();
        let hi = EvanescentScales::unit(b1 + db).unwrap();
        prop_assert!(hi.alpha_e / hi.k < lo.alpha_e / lo.k);
    }

    #[test]
    fn geometric_factor_scale_invariant(kind in 0u8..4, beta in 0.1f64..0.9, d in 0.01f64..0.3) {
        let r = region(kind, d);
        let unit = geometric_factor(&r, &EvanescentScales::unit(beta).unwrap(), None, &spec()).unwrap();
        let e = electron_from_beta(beta, None).unwrap();
        for s in SCALES {
            let g = geometric_factor(&r, &evanescent_scales(&e, s).unwrap(), None, &spec()).unwrap();
            prop_assert!(rel(g.value, unit.value) < 1e-9, "s={}: {} vs {}", s, g.value, unit.value);
        }
    }

    #[test]
    fn bound_scale_invariant(beta in 0.1f64..0.9, d_nm in 5.0f64..300.0, l in 0.5f64..5.0) {
        let e = electron_from_beta(beta, None).unwrap();
        let lam = 1550e-9;
        // d is stored in λ, so only L and λ carry the scale
        let r = DesignRegion::HalfSpace { d: d_nm * 1e-9 / lam };
        let at = |s: f64| {
            coupling_bound(&Material::NonDispersive { chi: 11.0 }, &r, &e, Length::Meters(l * lam * s), Some(lam * s), &spec())
                .unwrap()
                .g_ub_sq
        };
        let base = at(1.0);
        for s in SCALES {
            prop_assert!(rel(at(s), base) < 1e-9);
        }
    }

    #[test]
    fn geometric_factor_decreases_with_d(kind in 0u8..4, beta in 0.1f64..0.9, d in 0.01f64..0.3, f in 1.05f64..3.0) {
        let s = EvanescentScales::unit(beta).unwrap();
        let near = geometric_factor_auto(&region(kind, d), &s, None, &spec()).unwrap().value;
        let far = geometric_factor_auto(&region(kind, d * f), &s, None, &spec()).unwrap().value;
        prop_assert!(far < near);
    }

    #[test]
    fn annulus_inside_cylinder(beta in 0.1f64..0.9, d in 0.01f64..0.5, t in 1e-4f64..10.0) {
        let s = EvanescentScales::unit(beta).unwrap();
        let ann = geometric_factor_auto(&DesignRegion::Annulus { d, d2: d + t }, &s, None, &spec()).unwrap().value;
        let cyl = geometric_factor_auto(&DesignRegion::CylinderExterior { d }, &s, None, &spec()).unwrap().value;
        prop_assert!(ann <= cyl * (1.0 + 1e-12));
    }

    #[test]
    fn slot_is_twice_half_space(beta in 0.05f64..0.95, d in 0.005f64..0.5, duty in 0.1f64..1.0) {
        let s = EvanescentScales::unit(beta).unwrap();
        let half = geometric_factor(&DesignRegion::HalfSpace { d }, &s, None, &spec()).unwrap().value;
        let slot = geometric_factor(&DesignRegion::TwoSidedSlot { d, duty }, &s, None, &spec()).unwrap().value;
        prop_assert_eq!(slot, 2.0 * half);
    }

    #[test]
    fn drude_is_lorentz_bitwise(wp in 0.01f64..10.0, wm in 0.01f64..10.0) {
        let d = lorentz_factor(&Material::Drude { omega_p: wp }, wm).unwrap().value;
        let l = lorentz_factor(&Material::Lorentz { eps_b: 1.0, omega_p: wp, omega_0: 0.0 }, wm).unwrap().value;
        prop_assert_eq!(d.to_bits(), l.to_bits());
    }

    #[test]
    fn nondispersive_increasing_above_one(chi in 1.0f64..1e3, dc in 1e-6f64..1.0) {
        let a = nondispersive_factor(chi).unwrap().value;
        let b = nondispersive_factor(chi * (1.0 + dc)).unwrap().value;
        prop_assert!(b > a);
    }

    #[test]
    fn lorentz_without_resonance_doubles(chi in 0.1f64..20.0, w0 in 0.0f64..3.0, beta in 0.1f64..0.9, d in 0.01f64..0.2) {
        let e = electron_from_beta(beta, None).unwrap();
        let r = DesignRegion::HalfSpace { d };
        let nd = coupling_bound(&Material::NonDispersive { chi }, &r, &e, Length::Lambda(1.0), None, &spec()).unwrap();
        let lz = Material::Lorentz { eps_b: 1.0 + chi, omega_p: 0.0, omega_0: w0 };
        let lb = coupling_bound(&lz, &r, &e, Length::Lambda(1.0), None, &spec()).unwrap();
        prop_assert!((lb.g_ub_sq / nd.g_ub_sq - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_density_non_negative(w in 0.5f64..1.5, wm in 0.8f64..1.2, gf in 1e-5f64..1e-2, v in 0.1f64..0.9, gsq in 0.0f64..1.0) {
        let m = SpectrumMode {
            omega_m: wm,
            gamma_d: gf * wm,
            z_profile: ZProfile { u0: 1.0, k_m: wm / v, length: 10.0 },
            g_m_sq: gsq,
        };
        prop_assert!(spectrum_density(&[m], w, v).unwrap() >= 0.0);
    }

    #[test]
    fn hollow_core_roots_and_continuity(chi in 0.5f64..20.0, d in 0.05f64..1.0, t in 0.05f64..1.0) {
        let cfg = HollowCoreConfig { d, d2: d + t, eps: 1.0 + chi };
        match solve_hollow_core_all(&cfg) {
            Err(Error::NoMode(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(modes) => for m in modes {
                prop_assert!(m.dispersion_residual.abs() <= 1e-10);
                prop_assert!(m.interface_mismatch() <= 1e-8, "{}", m.interface_mismatch());
            },
        }
    }

    #[test]
    fn metal_hole_roots_and_continuity(d in 0.01f64..1.0, wp in 1.02f64..2.5) {
        let cfg = MetalHoleConfig { d, omega_p_over_omega: wp };
        match solve_metal_hole_all(&cfg) {
            Err(Error::NoMode(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(modes) => for m in modes {
                prop_assert!(m.dispersion_residual.abs() <= 1e-10);
                prop_assert!(m.interface_mismatch() <= 1e-8, "{}", m.interface_mismatch());
            },
        }
    }

    #[test]
    fn sweep_order_independent_of_workers(n in 1usize..200, w in 2usize..8) {
        let items: Vec<f64> = (0..n).map(|i| i as f64 * 0.37).collect();
        let f = |i: usize, x: &f64| (x.sin() * i as f64).to_bits();
        let seq = map_indexed(&items, Execution::Sequential, f).unwrap();
        prop_assert_eq!(&seq, &map_indexed(&items, Execution::Workers(w), f).unwrap());
        prop_assert_eq!(&seq, &map_indexed(&items, Execution::Parallel, f).unwrap());
    }
}
