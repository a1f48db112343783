//! Classical special-function references.
//!
//! These are deliberately independent of the contour machinery: they serve as
//! oracles for the parabolic representations and as closed-form right-hand
//! sides for the dictionary.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{PmtError, Result};
use crate::series;
use crate::Complex;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `B_{2j}` for `j = 1..=15`.
pub const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_nonpositive_integer(s: Complex) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// `ln Γ(s)` for `Re(s) ≥ 1/2` (Lanczos, log form; branch not tracked).
fn ln_gamma_right(s: Complex) -> Complex {
    let x = s - 1.0;
    let mut acc = Complex::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Reference Γ(s): Lanczos (g = 7, 9 terms) with reflection for `Re(s) < 1/2`.
pub fn gamma_reference(s: Complex) -> Result<Complex> {
    if is_nonpositive_integer(s) {
        return Err(PmtError::Pole(s));
    }
    let v = if s.re < 0.5 {
        PI / ((PI * s).sin() * ln_gamma_right(1.0 - s).exp())
    } else {
        ln_gamma_right(s).exp()
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(PmtError::NonFinite {
            what: format!("gamma_reference({s})"),
        })
    }
}

/// Reference 1/Γ(s); entire, exactly zero at the non-positive integers.
pub fn rgamma_reference(s: Complex) -> Complex {
    if is_nonpositive_integer(s) {
        return Complex::new(0.0, 0.0);
    }
    if s.re < 0.5 {
        (PI * s).sin() * ln_gamma_right(1.0 - s).exp() / PI
    } else {
        (-ln_gamma_right(s)).exp()
    }
}

/// Reference ψ(z) by the central difference `ln(Γ(z+h)/Γ(z−h)) / 2h`, `h = 1e-5`.
pub fn digamma_fd(z: Complex) -> Result<Complex> {
    const H: f64 = 1e-5;
    let ratio = gamma_reference(z + H)? / gamma_reference(z - H)?;
    Ok(ratio.ln() / (2.0 * H))
}

/// ψ(z) by upward recurrence and the Stirling asymptotic series.
pub fn digamma_series(z: Complex) -> Result<Complex> {
    if is_nonpositive_integer(z) {
        return Err(PmtError::Pole(z));
    }
    if z.re < 0.5 {
        let cot = (PI * z).cos() / (PI * z).sin();
        return Ok(digamma_series(1.0 - z)? - PI * cot);
    }
    let mut acc = Complex::new(0.0, 0.0);
    let mut x = z;
    while x.norm() < 20.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut tail = Complex::new(0.0, 0.0);
    for (j, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        tail += *b / (2.0 * (j + 1) as f64) * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - tail)
}

/// Upper incomplete gamma `Γ(ν, x)` for real `ν > 0` and `x` off the negative axis.
pub fn incomplete_gamma_upper(nu: f64, x: Complex) -> Result<Complex> {
    if !(nu > 0.0) {
        return Err(PmtError::InvalidSpec(format!(
            "incomplete gamma needs nu > 0, got {nu}"
        )));
    }
    let full = gamma_reference(Complex::new(nu, 0.0))?;
    if x.norm() == 0.0 {
        return Ok(full);
    }
    if x.norm() < nu + 4.0 || x.re < 1.0 {
        // γ(ν,x) = x^ν e^{-x} Σ xⁿ / (ν)_{n+1}
        let mut term = Complex::new(1.0 / nu, 0.0);
        let mut sum = term;
        let mut n = 1.0;
        while term.norm() > 1e-17 * sum.norm() && n < 2000.0 {
            term *= x / (nu + n);
            sum += term;
            n += 1.0;
        }
        let lower = (nu * x.ln() - x).exp() * sum;
        return Ok(full - lower);
    }
    // Modified Lentz on the Legendre continued fraction.
    let tiny = 1e-300;
    let mut b = x + 1.0 - nu;
    let mut c = Complex::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..5000 {
        let an = -(i as f64) * (i as f64 - nu);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = Complex::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex::new(tiny, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    Ok((nu * x.ln() - x).exp() * h)
}

/// Parabolic cylinder function `D_n(x)` for integer `n ≥ 0`.
pub fn parabolic_cylinder_int(n: u32, x: f64) -> f64 {
    let mut prev = (-0.25 * x * x).exp();
    if n == 0 {
        return prev;
    }
    let mut cur = x * prev;
    for m in 1..n {
        let next = x * cur - m as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn harmonic(n: u32) -> f64 {
    (1..=n).map(|j| 1.0 / j as f64).sum()
}

const ZETA_TABLE_RANGE: i64 = 80;

fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (-ZETA_TABLE_RANGE..=ZETA_TABLE_RANGE)
            .map(zeta_integer_uncached)
            .collect()
    })
}

fn zeta_integer_uncached(n: i64) -> f64 {
    match n {
        1 => f64::NAN,
        0 => -0.5,
        n if n >= 2 => series::hurwitz_euler_maclaurin(Complex::new(n as f64, 0.0), 1.0)
            .map(|v| v.re)
            .unwrap_or(f64::NAN),
        n => {
            // ζ(1−m) = 2 (2π)^{−m} cos(πm/2) Γ(m) ζ(m), m = 1 − n ≥ 2
            let m = 1 - n;
            if m % 2 == 1 {
                return 0.0;
            }
            let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let log_mag = (2.0f64).ln() - m as f64 * (2.0 * PI).ln()
                + ln_gamma_right(Complex::new(m as f64, 0.0)).re;
            sign * log_mag.exp() * zeta_integer_uncached(m)
        }
    }
}

/// ζ(n) at an integer `n ≠ 1`.
pub fn zeta_integer(n: i64) -> f64 {
    if (-ZETA_TABLE_RANGE..=ZETA_TABLE_RANGE).contains(&n) {
        zeta_table()[(n + ZETA_TABLE_RANGE) as usize]
    } else {
        zeta_integer_uncached(n)
    }
}

/// η(n) at an integer; `η(1) = ln 2`.
pub fn eta_integer(n: i64) -> f64 {
    if n == 1 {
        return std::f64::consts::LN_2;
    }
    (1.0 - 2f64.powi((1 - n) as i32)) * zeta_integer(n)
}

/// `Li_k(e^u)`, `k ≥ 1`: logarithmic expansion near `u = 0`, Dirichlet series elsewhere.
pub fn polylog_exp(k: u32, u: Complex) -> Complex {
    assert!(k >= 1, "polylog order must be >= 1");
    if u.norm() < 2.0 {
        let kk = k as i64;
        let mut sum = Complex::new(0.0, 0.0);
        let mut pow = Complex::new(1.0, 0.0);
        let mut fact = 1.0;
        for j in 0..=70usize {
            if j > 0 {
                pow *= u;
                fact *= j as f64;
            }
            let j64 = j as i64;
            if j64 == kk - 1 {
                sum += pow / fact * (harmonic(k - 1) - (-u).ln());
            } else {
                sum += zeta_integer(kk - j64) * pow / fact;
            }
        }
        sum
    } else {
        dirichlet_exp_series(k, u, 1.0)
    }
}

/// `Li_k(−e^u)`, `k ≥ 1`.
pub fn polylog_neg_exp(k: u32, u: Complex) -> Complex {
    assert!(k >= 1, "polylog order must be >= 1");
    if u.norm() < 1.5 {
        let kk = k as i64;
        let mut sum = Complex::new(0.0, 0.0);
        let mut pow = Complex::new(1.0, 0.0);
        let mut fact = 1.0;
        for j in 0..70usize {
            if j > 0 {
                pow *= u;
                fact *= j as f64;
            }
            sum -= eta_integer(kk - j as i64) * pow / fact;
        }
        sum
    } else {
        dirichlet_exp_series(k, u, -1.0)
    }
}

/// `Σ_{n≥1} signⁿ e^{nu} / n^k` by direct summation (needs `Re(u) < 0`).
fn dirichlet_exp_series(k: u32, u: Complex, sign: f64) -> Complex {
    let q = u.exp();
    let mut qn = Complex::new(1.0, 0.0);
    let mut sgn = 1.0;
    let mut sum = Complex::new(0.0, 0.0);
    for n in 1..200_000u32 {
        qn *= q;
        sgn *= sign;
        let term = sgn * qn / (n as f64).powi(k as i32);
        sum += term;
        if qn.norm() < 1e-18 {
            break;
        }
    }
    sum
}
