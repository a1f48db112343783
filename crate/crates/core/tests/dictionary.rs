use pmt_core::gamma::big_g_closed;
use pmt_core::pmt::verify::{evaluate_entry, verify_entries};
use pmt_core::pmt::{
    boundary_limit, dictionary_verify, lookup, pmt_boundary, pmt_eval, property_report,
    property_verify, registry, AbelSchedule, Mode, Property, PropertyParams, TABLE_ROWS,
};
use pmt_core::zeta::{big_d, big_r, ZetaConfig};
use pmt_core::{c64, Complex, ContourSpec, PmtError};
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn registry_covers_every_row_once() {
    let reg = registry();
    let names: Vec<&str> = reg.iter().map(|e| e.name).collect();
    for expected in [
        "rational",
        "gaussian",
        "scaled-gaussian",
        "perturbed-exp",
        "incomplete-gamma",
        "monomial",
        "log-gaussian",
        "geometric",
        "alternating",
        "hurwitz",
        "dirichlet-l",
        "sine",
        "cosine",
        "polylog",
        "polylog-alt",
        "polylog-shift",
    ] {
        assert_eq!(
            names.iter().filter(|n| **n == expected).count(),
            1,
            "{expected}"
        );
    }
    for row in TABLE_ROWS {
        assert!(reg.iter().any(|e| e.row == row), "row {row} has no entry");
    }
    assert!(reg.iter().all(|e| TABLE_ROWS.contains(&e.row)));
}

#[test]
fn default_run_passes_and_summarizes_each_row_once() {
    let mut sink = Vec::new();
    let report = dictionary_verify(&[], None, Some(&mut sink)).unwrap();
    for row in report.failures() {
        eprintln!("{row:?}");
    }
    assert!(report.pass);
    assert_eq!(report.table.len(), TABLE_ROWS.len());
    for (summary, label) in report.table.iter().zip(TABLE_ROWS) {
        assert_eq!(summary.row, label);
        assert!(summary.checks >= 3);
    }
    let json: serde_json::Value = serde_json::from_slice(&sink).unwrap();
    let first = &json["rows"][0];
    for key in [
        "name", "z", "computed", "expected", "abs_dev", "rel_dev", "pass",
    ] {
        assert!(!first[key].is_null(), "missing {key}");
    }
    assert!(first["computed"]["re"].is_f64());
}

#[test]
fn worked_examples() {
    let e = |n: &str| lookup(n).unwrap();
    let rational = pmt_eval(&e("rational"), c64(1.0, 2.0), &ContourSpec::new(0.5)).unwrap();
    assert!((rational.value - PI).norm() < 1e-8);
    let g = pmt_eval(&e("gaussian"), c64(0.0, 0.0), &ContourSpec::new(1.0)).unwrap();
    assert!((g.value.re - PI.sqrt()).abs() < 1e-10);
    let m = pmt_eval(&e("monomial"), c64(0.0, 0.0), &ContourSpec::new(1.0)).unwrap();
    assert!((m.value.re + PI.sqrt() / 2.0).abs() < 1e-10);

    let sched = AbelSchedule::default();
    let cos = pmt_boundary(&e("cosine"), c64(0.0, 0.0), &sched).unwrap();
    assert!((cos.re - (PI / 2.0).sqrt()).abs() < 1e-6);
    let sin = pmt_boundary(&e("sine"), c64(0.0, 0.0), &sched).unwrap();
    assert!((sin.re + (PI / 2.0).sqrt()).abs() < 1e-6);
    let li = pmt_boundary(&e("polylog"), c64(0.0, 0.0), &sched).unwrap();
    assert!((li.re - PI.sqrt() * 2.612_375_348_685_488).abs() < 1e-5);

    let pe = evaluate_entry(&e("perturbed-exp"), c64(0.0, 0.0)).unwrap();
    assert!((pe.re - 1.520_346_901_066_280_8).abs() < 1e-8);
    let ig = evaluate_entry(&e("incomplete-gamma"), c64(0.0, 0.0)).unwrap();
    assert!((ig.re - 2.0 * 1.329_340_388_179_137).abs() < 1e-5);
    let l = evaluate_entry(&e("dirichlet-l"), c64(1.0, 0.0)).unwrap();
    assert!((l.re + 0.766_145_528_6).abs() < 1e-5);
    let alt = evaluate_entry(&e("polylog-alt"), c64(0.0, 0.0)).unwrap();
    assert!((alt.re + 1.356_187_790_306_202).abs() < 1e-5);
}

#[test]
fn mode_and_window_errors() {
    let cos = lookup("cosine").unwrap();
    assert!(matches!(
        pmt_eval(&cos, c64(0.0, 0.0), &ContourSpec::new(1.0)),
        Err(PmtError::WrongMode { .. })
    ));
    let geo = lookup("geometric").unwrap();
    assert!(matches!(
        pmt_eval(&geo, c64(0.0, 0.0), &ContourSpec::new(1.9)),
        Err(PmtError::SigmaOutOfWindow { .. })
    ));
    assert!(matches!(
        pmt_boundary(&geo, c64(0.0, 0.0), &AbelSchedule::default()),
        Err(PmtError::WrongMode { .. })
    ));
    assert!(matches!(
        dictionary_verify(&["nope"], None, None),
        Err(PmtError::UnknownEntry(_))
    ));
}

#[test]
fn consistency_with_zeta_module() {
    let z = c64(0.3, 1.1);
    let geo = pmt_eval(&lookup("geometric").unwrap(), z, &ContourSpec::new(1.7)).unwrap();
    let r = big_r(z, 1.0, &ZetaConfig::r()).unwrap();
    assert!((geo.value - r.value).norm() < 1e-10 * r.value.norm().max(1.0));
    let alt = pmt_eval(&lookup("alternating").unwrap(), z, &ContourSpec::new(1.2)).unwrap();
    let d = big_d(z, 1.0, &ZetaConfig::d()).unwrap();
    assert!((alt.value - d.value).norm() < 1e-10 * d.value.norm().max(1.0));
    let hz = lookup("hurwitz").unwrap().with_param("a", 0.3).unwrap();
    let h = pmt_eval(&hz, z, &ContourSpec::new(1.7)).unwrap();
    let r = big_r(z, 0.3, &ZetaConfig::r()).unwrap();
    assert!((h.value - r.value).norm() < 1e-10 * r.value.norm().max(1.0));
}

#[test]
fn incomplete_gamma_with_unit_order_is_a_scaled_gaussian() {
    let ig = lookup("incomplete-gamma")
        .unwrap()
        .with_param("nu", 1.0)
        .unwrap()
        .with_param("lambda", 2.0)
        .unwrap();
    let sg = lookup("scaled-gaussian")
        .unwrap()
        .with_param("alpha", 2.0)
        .unwrap();
    for z in [c64(0.0, 0.0), c64(0.4, 0.3), c64(1.2, 0.0)] {
        let a = ig.expected(z).unwrap();
        let b = sg.expected(z).unwrap();
        assert!((a - b).norm() < 1e-12 * b.norm().max(1.0), "{z}");
        let numeric = pmt_boundary(&ig, z, &AbelSchedule::default()).unwrap();
        assert!((numeric - b).norm() < 1e-6 * b.norm().max(1.0), "{z}");
    }
}

#[test]
fn boundary_gaussian_is_g() {
    for re in [-0.39, -0.2, 0.0, 0.5, 1.0, 1.5, 2.0] {
        let z = c64(re, 0.3);
        let v = boundary_limit(|x| c64((-x).exp(), 0.0), z, &AbelSchedule::default()).unwrap();
        assert!((v.value - big_g_closed(z)).norm() < 1e-6, "{z}");
    }
}

#[test]
fn custom_samples_and_params() {
    let entry = lookup("scaled-gaussian")
        .unwrap()
        .with_param("alpha", 0.7)
        .unwrap();
    let zs = [c64(0.2, -0.4), c64(-2.1, 1.3)];
    let report = verify_entries(&[entry], Some(&zs), None).unwrap();
    assert!(report.pass);
    assert_eq!(report.rows.len(), 2);
}

#[test]
fn fast_properties_pass() {
    let cfg = ContourSpec::new(1.0);
    for p in Property::ALL.into_iter().filter(|p| !p.is_slow()) {
        let report = property_verify(p, &PropertyParams::default(), &cfg).unwrap();
        assert!(report.pass, "{}", p.name());
    }
}

#[test]
fn property_examples() {
    let cfg = ContourSpec::new(1.0);
    let params = PropertyParams {
        alphas: vec![4.0],
        z_samples: Some(vec![c64(0.0, 0.0)]),
        ..PropertyParams::default()
    };
    let r = property_report(Property::Scaling, &params, &cfg).unwrap();
    assert!((r.rows[0].computed.re - PI.sqrt() / 2.0).abs() < 1e-10);
    let r = property_report(Property::Inversion, &PropertyParams::default(), &cfg).unwrap();
    assert!((r.rows[0].computed.re - 0.367_879_441_2).abs() < 1e-6);
    let params = PropertyParams {
        z_samples: Some(vec![c64(1.0, 0.0)]),
        ..PropertyParams::default()
    };
    let r = property_report(Property::DirichletComposition, &params, &cfg).unwrap();
    assert!((r.rows[0].computed.re + 2.315_157_373_394_117).abs() < 1e-8);
}

#[test]
fn property_violation_carries_diagnostics() {
    let params = PropertyParams {
        tol: Some(0.0),
        fd_step: 0.3,
        z_samples: Some(vec![c64(0.0, 0.0)]),
        ..PropertyParams::default()
    };
    match property_verify(Property::Differentiation, &params, &ContourSpec::new(1.0)) {
        Err(PmtError::PropertyViolation { property, detail }) => {
            assert_eq!(property, "differentiation");
            assert!(detail.contains("abs_dev"));
        }
        other => panic!("expected a violation, got {other:?}"),
    }
}

#[test]
fn convolution_property() {
    let report = property_verify(
        Property::Convolution,
        &PropertyParams::default(),
        &ContourSpec::new(1.0),
    )
    .unwrap();
    assert!(report.pass);
}

#[test]
fn boundary_entries_use_abel_mode() {
    for e in registry() {
        if e.mode == Mode::BoundaryAbel {
            assert_eq!(e.sigma_window, (0.0, 0.0), "{}", e.name);
            assert!(e.samples.iter().all(|z| z.re > -0.5));
        } else {
            assert!(e.sigma_window.0 < e.default_sigma && e.default_sigma < e.sigma_window.1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linearity(re in -1.5f64..1.5, im in -2.0f64..2.0, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let z = c64(re, im);
        let spec = ContourSpec::new(1.0);
        let combo = pmt_core::pmt::pmt_integral(|u| a * u.exp() + b * u * u.exp(), z, &spec, 1.0, 2.0).unwrap().value;
        let f1 = pmt_core::pmt::pmt_integral(|u| u.exp(), z, &spec, 1.0, 0.0).unwrap().value;
        let f2 = pmt_core::pmt::pmt_integral(|u| u * u.exp(), z, &spec, 1.0, 2.0).unwrap().value;
        let rhs: Complex = a * f1 + b * f2;
        prop_assert!((combo - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn rational_is_pi_everywhere(re in -3.0f64..3.0, im in -3.0f64..3.0, sigma in 0.2f64..0.8) {
        let v = pmt_eval(&lookup("rational").unwrap(), c64(re, im), &ContourSpec::new(sigma)).unwrap();
        prop_assert!((v.value - PI).norm() < 1e-8, "{}", v.value);
    }
}
