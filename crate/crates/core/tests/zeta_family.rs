use pmt_core::gamma::big_g_closed;
use pmt_core::series::{hurwitz_euler_maclaurin, rpow};
use pmt_core::zeta::{
    big_d, big_r, critical_line_value, eta_fn, hurwitz_zeta, jensen_oracle, riemann_zeta,
    series_oracle, truncated_sum_remainder, zeta_via_gamma_form, ZetaConfig,
};
use pmt_core::{c64, Complex, PmtError};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Twenty non-integer points with Re(s) ∈ [−2, 4] and |Im(s)| ≤ 10.
fn grid() -> Vec<Complex> {
    vec![
        c64(0.5, 0.0),
        c64(-1.7, 0.0),
        c64(-0.5, 0.0),
        c64(0.25, 0.0),
        c64(1.5, 0.0),
        c64(2.5, 0.0),
        c64(3.3, 0.0),
        c64(3.9, 0.0),
        c64(0.5, 5.0),
        c64(0.5, 10.0),
        c64(0.5, -7.0),
        c64(-2.0, 3.0),
        c64(-1.2, -9.5),
        c64(-0.3, 6.2),
        c64(0.8, -2.0),
        c64(1.0, 4.0),
        c64(2.0, -10.0),
        c64(3.0, 1.5),
        c64(4.0, 8.0),
        c64(1.9, 0.7),
    ]
}

#[test]
fn oracle_triangle() {
    let cfg = ZetaConfig::r();
    for s in grid() {
        let a = riemann_zeta(s, &cfg).unwrap();
        let b = jensen_oracle(s).unwrap();
        let c = series_oracle(s).unwrap();
        let scale = c.norm().max(1.0);
        assert!(
            (a - c).norm() < 1e-7 * scale,
            "R/G vs series at {s}: {a} {c}"
        );
        assert!(
            (b - c).norm() < 1e-7 * scale,
            "jensen vs series at {s}: {b} {c}"
        );
        assert!((a - b).norm() < 1e-7 * scale, "R/G vs jensen at {s}");
    }
    let z_half = riemann_zeta(c64(0.5, 0.0), &cfg).unwrap();
    assert!((z_half.re + 1.460_354_508_8).abs() < 1e-7);
}

#[test]
fn jensen_integer_values() {
    assert!((jensen_oracle(c64(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-9);
    assert!((jensen_oracle(c64(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-9);
    assert!((jensen_oracle(c64(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-9);
}

#[test]
fn halving_and_eta_identities() {
    let cfg = ZetaConfig::r();
    for s in [1.2, 1.3, 1.75, 2.5, 3.1, 3.7, 3.95] {
        let s = c64(s, 0.0);
        let z = riemann_zeta(s, &cfg).unwrap();
        let half = hurwitz_zeta(s, 0.5, &cfg).unwrap();
        assert!(
            (half - (rpow(2.0, s) - 1.0) * z).norm() < 1e-8 * half.norm().max(1.0),
            "{s}"
        );
        let eta = eta_fn(s, &ZetaConfig::d()).unwrap();
        assert!((eta - (1.0 - rpow(2.0, 1.0 - s)) * z).norm() < 1e-8, "{s}");
    }
}

#[test]
fn hurwitz_against_partial_sums() {
    let cfg = ZetaConfig::r();
    for (s, a) in [
        (c64(1.5, 0.0), 0.3),
        (c64(2.2, 1.0), 0.75),
        (c64(3.0, -2.0), 1.0),
    ] {
        let n = 2000usize;
        let head: Complex = (0..=n).map(|k| rpow(k as f64 + a, -s)).sum();
        // Σ_{k>N} (k+a)^{-s} ≈ ∫_{N+1/2}^∞ (x+a)^{-s} dx, error O(N^{-s-1})
        let tail = rpow(n as f64 + 0.5 + a, 1.0 - s) / (s - 1.0);
        let v = hurwitz_zeta(s, a, &cfg).unwrap();
        assert!((v - head - tail).norm() < 1e-8, "ζ({s},{a}) = {v}");
    }
}

#[test]
fn critical_line_against_series() {
    let cfg = ZetaConfig::r();
    for tau in [1.0, 5.0, 10.0, 14.0, 20.0, 25.0, 30.0] {
        let v = critical_line_value(tau, &cfg).unwrap();
        let o = series_oracle(c64(0.5, tau)).unwrap();
        assert!((v - o).norm() < 1e-4 * o.norm(), "τ={tau}: {v} vs {o}");
    }
    assert!(matches!(
        critical_line_value(30.5, &cfg),
        Err(PmtError::TauOutOfRange { .. })
    ));
}

#[test]
fn gamma_form_path_agrees() {
    let cfg = ZetaConfig::r();
    for s in [c64(0.5, 0.0), c64(2.5, 1.0), c64(-0.7, 3.0)] {
        let a = zeta_via_gamma_form(s, &cfg).unwrap();
        let b = riemann_zeta(s, &cfg).unwrap();
        assert!((a - b).norm() < 1e-8 * b.norm().max(1.0), "{s}");
    }
}

#[test]
fn truncated_sum_remainder_is_the_hurwitz_tail() {
    // The remainder after N terms is G(s−1/2)·ζ(s, N+1): it decreases in N but
    // only algebraically, like N^{1−s}/(s−1).
    let s = c64(2.5, 0.0);
    let cfg = ZetaConfig::r().with_sigma(1.0);
    let mut prev = f64::INFINITY;
    for n in [1u32, 2, 4, 8, 16] {
        let rem = truncated_sum_remainder(s, n, &cfg).unwrap().value;
        let oracle = big_g_closed(s - 0.5) * hurwitz_euler_maclaurin(s, (n + 1) as f64).unwrap();
        assert!((rem - oracle).norm() < 1e-9, "N={n}: {rem} vs {oracle}");
        assert!(rem.norm() < prev, "N={n}");
        prev = rem.norm();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn r_and_d_are_sigma_independent(re in -1.5f64..1.5, im in -4.0f64..4.0) {
        let z = c64(re, im);
        let r1 = big_r(z, 1.0, &ZetaConfig::r().with_sigma(1.0)).unwrap().value;
        let r2 = big_r(z, 1.0, &ZetaConfig::r().with_sigma(1.7)).unwrap().value;
        prop_assert!((r1 - r2).norm() < 1e-9 * r1.norm().max(1.0));
        let d1 = big_d(z, 1.0, &ZetaConfig::d().with_sigma(0.6)).unwrap().value;
        let d2 = big_d(z, 1.0, &ZetaConfig::d().with_sigma(1.2)).unwrap().value;
        prop_assert!((d1 - d2).norm() < 1e-9 * d1.norm().max(1.0));
    }

    #[test]
    fn conjugate_symmetry(re in -1.5f64..1.5, im in -6.0f64..6.0) {
        let z = c64(re, im);
        let a = big_r(z.conj(), 1.0, &ZetaConfig::r()).unwrap().value;
        let b = big_r(z, 1.0, &ZetaConfig::r()).unwrap().value.conj();
        prop_assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
        let a = big_d(z.conj(), 1.0, &ZetaConfig::d()).unwrap().value;
        let b = big_d(z, 1.0, &ZetaConfig::d()).unwrap().value.conj();
        prop_assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }
}

#[test]
fn positive_integers_are_refused() {
    let cfg = ZetaConfig::r();
    assert!(matches!(
        riemann_zeta(c64(2.0, 0.0), &cfg),
        Err(PmtError::NearPositiveInteger { n: 2, .. })
    ));
    assert!(matches!(
        riemann_zeta(c64(1.0, 0.0), &cfg),
        Err(PmtError::PoleAtOne)
    ));
}
