//! Series-based references: accelerated alternating sums and Euler–Maclaurin.

use crate::classical::BERNOULLI_EVEN;
use crate::error::{PmtError, Result};
use crate::Complex;

/// Σ_{k≥0} (−1)^k a_k with the Borwein/Cohen–Villegas–Zagier weights of
/// order `n`. Converges like `(3+√8)^{-n}` for moment-type sequences.
pub fn borwein_alternating<F>(n: usize, term: F) -> Complex
where
    F: Fn(usize) -> Complex,
{
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut e = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        e *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += e;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex::new(0.0, 0.0);
    for (k, dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dk - dn) * term(k);
    }
    -sum / dn
}

/// Order needed for ~1e-16 relative accuracy on Dirichlet-type terms at `s`.
pub fn borwein_order(s: Complex) -> usize {
    let t = s.im.abs();
    let budget =
        40.0 + (1.0 + 2.0 * t).ln() + std::f64::consts::FRAC_PI_2 * t + 2.0 * (-s.re).max(0.0);
    (budget / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 5
}

/// η(s) = Σ_{n≥1} (−1)^{n−1} n^{−s}.
pub fn eta_borwein(s: Complex) -> Complex {
    borwein_alternating(borwein_order(s), |k| rpow((k + 1) as f64, -s))
}

/// Dirichlet β(s) = Σ_{n≥0} (−1)^n (2n+1)^{−s}, the L-function of the character mod 4.
pub fn beta_borwein(s: Complex) -> Complex {
    borwein_alternating(borwein_order(s), |k| rpow((2 * k + 1) as f64, -s))
}

/// ζ(s) through η(s)/(1 − 2^{1−s}).
pub fn zeta_via_eta(s: Complex) -> Result<Complex> {
    if s == Complex::new(1.0, 0.0) {
        return Err(PmtError::PoleAtOne);
    }
    let denom = 1.0 - (1.0 - s).expf(2.0);
    if denom.norm() <= 1e-12 {
        return Err(PmtError::EtaZetaConversionSingularity { s });
    }
    Ok(eta_borwein(s) / denom)
}

/// `x^e` for real `x > 0`.
#[inline]
pub fn rpow(x: f64, e: Complex) -> Complex {
    (e * x.ln()).exp()
}

fn rising(s: Complex, n: usize) -> Complex {
    (0..n).fold(Complex::new(1.0, 0.0), |acc, j| acc * (s + j as f64))
}

/// ζ(s, a) by direct summation of `N` terms plus the Euler–Maclaurin tail.
pub fn hurwitz_euler_maclaurin(s: Complex, a: f64) -> Result<Complex> {
    if !(a > 0.0) {
        return Err(PmtError::InvalidScale(a));
    }
    if s == Complex::new(1.0, 0.0) {
        return Err(PmtError::PoleAtOne);
    }
    let n = 15 + s.norm().ceil() as usize;
    let mut head = Complex::new(0.0, 0.0);
    for k in 0..n {
        head += rpow(k as f64 + a, -s);
    }
    let x = n as f64 + a;
    let mut tail = rpow(x, 1.0 - s) / (s - 1.0) + 0.5 * rpow(x, -s);
    let mut fact = 1.0;
    for (j, b) in BERNOULLI_EVEN.iter().take(12).enumerate() {
        let order = 2 * (j + 1);
        fact *= ((order - 1) * order) as f64;
        tail += *b / fact * rising(s, order - 1) * rpow(x, -s - (order as f64) + 1.0);
    }
    Ok(head + tail)
}

/// Σ_{n≥1} 1 / (n^k (n+i)^s) for `Re(s) + k > 1`.
pub fn complex_shift_dirichlet(k: u32, s: Complex) -> Result<Complex> {
    let p = s + k as f64;
    if p.re <= 1.0 {
        return Err(PmtError::InvalidSpec(format!(
            "complex-shift series needs Re(s)+k > 1, got {}",
            p.re
        )));
    }
    let i = Complex::new(0.0, 1.0);
    let f = |x: f64| x.powi(-(k as i32)) * (x + i).powc(-s);
    let n0 = 30 + s.norm().ceil() as usize;
    let mut head = Complex::new(0.0, 0.0);
    for n in 1..n0 {
        head += f(n as f64);
    }
    // f(x) = Σ_m c_m x^{−p−m}, c_m = binom(−s, m) iᵐ
    let x = n0 as f64;
    let mut coef = Complex::new(1.0, 0.0);
    let mut integral = Complex::new(0.0, 0.0);
    let mut derivs = [Complex::new(0.0, 0.0); 6];
    for m in 0..40usize {
        if m > 0 {
            coef *= (-s - (m as f64 - 1.0)) / m as f64 * i;
        }
        let q = p + m as f64;
        let xq = rpow(x, -q);
        integral += coef * xq * x / (q - 1.0);
        for (j, slot) in derivs.iter_mut().enumerate() {
            let r = 2 * j + 1;
            // d^r/dx^r x^{−q} = (−1)^r (q)_r x^{−q−r}
            *slot += coef * -rising(q, r) * xq * x.powi(-(r as i32));
        }
    }
    let mut tail = integral + 0.5 * f(x);
    let mut fact = 1.0;
    for (j, b) in BERNOULLI_EVEN.iter().take(6).enumerate() {
        let order = 2 * (j + 1);
        fact *= ((order - 1) * order) as f64;
        tail -= *b / fact * derivs[j];
    }
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn alternating_log_two() {
        let v = borwein_alternating(40, |k| c(1.0 / (k + 1) as f64, 0.0));
        assert!((v.re - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn eta_and_zeta_known_values() {
        assert!((zeta_via_eta(c(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta_via_eta(c(3.0, 0.0)).unwrap().re - 1.202_056_903_159_594_3).abs() < 1e-14);
        assert!((zeta_via_eta(c(0.5, 0.0)).unwrap().re + 1.460_354_508_809_586_8).abs() < 1e-13);
        assert!((zeta_via_eta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-13);
        assert!((eta_borwein(c(1.5, 0.0)).re - 0.765_147_024_625_408_4).abs() < 1e-14);
        assert!(matches!(
            zeta_via_eta(c(1.0, 0.0)),
            Err(PmtError::PoleAtOne)
        ));
    }

    #[test]
    fn zeta_zeros_on_critical_line() {
        for &t in &[
            14.134_725_141_734_693,
            21.022_039_638_771_555,
            25.010_857_580_145_688,
        ] {
            assert!(zeta_via_eta(c(0.5, t)).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn beta_at_one_is_quarter_pi() {
        let v = beta_borwein(c(1.0, 0.0));
        assert!((v.re - PI / 4.0).abs() < 1e-14);
        let v2 = beta_borwein(c(2.0, 0.0));
        assert!((v2.re - 0.915_965_594_177_219).abs() < 1e-14);
    }

    #[test]
    fn euler_maclaurin_agrees_with_alternating_route() {
        for &s in &[c(2.5, 0.0), c(0.5, 3.0), c(-1.5, 2.0), c(3.7, -8.0)] {
            let em = hurwitz_euler_maclaurin(s, 1.0).unwrap();
            let alt = zeta_via_eta(s).unwrap();
            assert!((em - alt).norm() < 1e-12 * alt.norm().max(1.0), "{s}");
        }
        // ζ(s, 1/2) = (2^s − 1) ζ(s)
        let s = c(2.5, 0.0);
        let half = hurwitz_euler_maclaurin(s, 0.5).unwrap();
        let oracle = (s.expf(2.0) - 1.0) * zeta_via_eta(s).unwrap();
        assert!((half - oracle).norm() < 1e-12);
    }

    #[test]
    fn complex_shift_matches_brute_force() {
        let s = c(1.5, 0.0);
        let v = complex_shift_dirichlet(2, s).unwrap();
        let i = c(0.0, 1.0);
        let mut brute = c(0.0, 0.0);
        let n_max = 200_000;
        for n in 1..=n_max {
            let x = n as f64;
            brute += 1.0 / (x * x) * (x + i).powc(-s);
        }
        // remaining tail ≈ ∫ x^{-3.5} from n_max
        let tail = (n_max as f64).powf(-2.5) / 2.5;
        assert!((v - brute - tail).norm() < 1e-12);
    }
}
