use pmt_core::classical::{digamma_fd, gamma_reference, EULER_GAMMA};
use pmt_core::gamma::{
    big_g, big_g_closed, digamma, euler_gamma, gamma_fn, reciprocal_gamma, GammaConfig,
};
use pmt_core::pmt::pmt_integral;
use pmt_core::{c64, Complex, ContourSpec};
use proptest::prelude::*;

fn cfg() -> GammaConfig {
    GammaConfig::default()
}

#[test]
fn reciprocal_gamma_on_reference_grid() {
    let mut grid: Vec<Complex> = (0..9).map(|k| c64(-3.5 + k as f64, 0.0)).collect();
    grid.extend([
        c64(0.5, 3.0),
        c64(0.5, -3.0),
        c64(2.0, 2.0),
        c64(2.0, -2.0),
        c64(-1.5, 1.0),
    ]);
    for s in grid {
        let oracle = 1.0 / gamma_reference(s).unwrap();
        let v = reciprocal_gamma(s, &cfg()).unwrap();
        assert!(
            (v - oracle).norm() <= 1e-9 * oracle.norm(),
            "1/Γ({s}) = {v}, want {oracle}"
        );
        let g = gamma_fn(s, &cfg()).unwrap();
        let want = gamma_reference(s).unwrap();
        assert!((g - want).norm() <= 1e-8 * want.norm(), "Γ({s})");
    }
}

#[test]
fn digamma_matches_finite_differences() {
    for z in [c64(0.5, 0.0), c64(1.0, 0.0), c64(2.0, 0.0), c64(1.0, 1.0)] {
        let v = digamma(z, &cfg()).unwrap();
        let fd = digamma_fd(z).unwrap();
        assert!((v - fd).norm() < 1e-6, "ψ({z}) = {v}, fd {fd}");
    }
}

#[test]
fn euler_constant() {
    let g = euler_gamma(&cfg()).unwrap();
    assert!((g - 0.577_215_664_9).abs() < 1e-8);
    assert!((g - EULER_GAMMA).abs() < 1e-9);
}

#[test]
fn sigma_independence_on_grid() {
    for i in -2..=2 {
        for j in -2..=2 {
            let z = c64(i as f64, j as f64);
            let vals: Vec<Complex> = [0.5, 1.0, 2.0]
                .iter()
                .map(|&s| big_g(z, &cfg().with_sigma(s)).unwrap().value)
                .collect();
            let tol = 10.0 * cfg().contour.tol * vals[1].norm().max(1.0);
            assert!((vals[0] - vals[1]).norm() < tol, "{z}: σ 0.5 vs 1");
            assert!((vals[2] - vals[1]).norm() < tol, "{z}: σ 2 vs 1");
        }
    }
}

#[test]
fn monomial_shift_cross_check() {
    let spec = ContourSpec::new(1.0);
    for z in [c64(0.0, 0.0), c64(0.3, 0.8), c64(-1.4, -0.5)] {
        let direct = big_g(z + 1.0, &cfg()).unwrap().value;
        let pmt = pmt_integral(|u| u * u.exp(), z, &spec, 1.0, 2.0)
            .unwrap()
            .value;
        assert!(
            (direct - pmt).norm() < 1e-10 * direct.norm().max(1.0),
            "{z}"
        );
    }
}

#[test]
fn quadrature_is_deterministic() {
    let z = c64(0.37, -1.2);
    let a = big_g(z, &cfg()).unwrap();
    let b = big_g(z, &cfg()).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry(re in -2.5f64..2.5, im in -3.0f64..3.0) {
        let z = c64(re, im);
        let a = big_g(z.conj(), &cfg()).unwrap().value;
        let b = big_g(z, &cfg()).unwrap().value.conj();
        prop_assert!((a - b).norm() <= cfg().contour.tol * a.norm().max(1.0));
    }

    #[test]
    fn quadrature_matches_closed_form(re in -3.0f64..3.0, im in -4.0f64..4.0) {
        let z = c64(re, im);
        let q = big_g(z, &cfg()).unwrap().value;
        let c = big_g_closed(z);
        prop_assert!((q - c).norm() <= 1e-9 * c.norm().max(1.0), "{} vs {}", q, c);
    }

    #[test]
    fn reflection_consistency(re in -3.9f64..3.9, im in -2.0f64..2.0) {
        let s = c64(re, im);
        prop_assume!((s - c64(re.round(), 0.0)).norm() > 0.05);
        let p = reciprocal_gamma(s, &cfg()).unwrap() * gamma_fn(s, &cfg()).unwrap();
        prop_assert!((p - 1.0).norm() < 1e-8, "{}", p);
    }
}
