//! The geometric and alternating transforms
//! `R(z,a) = ∫ w^{2z} e^{a w²} / (1 − e^{w²}) dt` and
//! `D(z,a) = ∫ w^{2z} e^{a w²} / (1 + e^{w²}) dt`, and the zeta family
//! `ζ(s,a) = R(s−1/2, a) / G(s−1/2)`, `η(s) = D(s−1/2) / G(s−1/2)`.
//!
//! Two oracles independent of the contour are provided: Jensen's
//! `sech²` integral and the accelerated alternating series.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classical;
use crate::contour::{cpow, integrate_line, ContourSpec, QuadResult};
use crate::error::{PmtError, Result};
use crate::gamma::big_g_closed;
use crate::series;
use crate::Complex;

pub const R_SIGMA_MAX: f64 = 1.772_453_850_905_516; // √π
pub const D_SIGMA_MAX: f64 = 1.253_314_137_315_500_3; // √(π/2)
pub const R_DEFAULT_SIGMA: f64 = 1.7;
pub const D_DEFAULT_SIGMA: f64 = 1.2;
/// Distance from a positive integer inside which the ratio form is refused.
pub const INTEGER_GUARD: f64 = 1e-3;
pub const TAU_MAX: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    R,
    D,
}

impl Family {
    pub fn sigma_max(self) -> f64 {
        match self {
            Family::R => R_SIGMA_MAX,
            Family::D => D_SIGMA_MAX,
        }
    }

    pub fn default_sigma(self) -> f64 {
        match self {
            Family::R => R_DEFAULT_SIGMA,
            Family::D => D_DEFAULT_SIGMA,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaConfig {
    pub contour: ContourSpec,
    pub family: Family,
    pub a: f64,
}

impl ZetaConfig {
    pub fn new(family: Family) -> Self {
        Self {
            contour: ContourSpec::new(family.default_sigma()),
            family,
            a: 1.0,
        }
    }

    pub fn r() -> Self {
        Self::new(Family::R)
    }

    pub fn d() -> Self {
        Self::new(Family::D)
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.contour.sigma = sigma;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.contour.tol = tol;
        self
    }

    pub fn with_a(mut self, a: f64) -> Self {
        self.a = a;
        self
    }

    /// The configured family's transform at `z` with shift `self.a`.
    pub fn transform(&self, z: Complex) -> Result<QuadResult> {
        match self.family {
            Family::R => big_r(z, self.a, self),
            Family::D => big_d(z, self.a, self),
        }
    }
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self::r()
    }
}

pub fn check_window(family: Family, sigma: f64) -> Result<()> {
    let hi = family.sigma_max();
    if !(sigma > 0.0 && sigma < hi) {
        return Err(PmtError::SigmaOutOfWindow { sigma, lo: 0.0, hi });
    }
    Ok(())
}

fn check_shift(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(PmtError::InvalidScale(a));
    }
    Ok(())
}

fn kernel_line(z: Complex, a: f64, spec: &ContourSpec, sign: f64) -> Result<QuadResult> {
    let spec = spec.for_gaussian_envelope(a.min(1.0), 2.0 * z + 1.0);
    let sigma = spec.sigma;
    let power = 2.0 * z;
    integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            let u = w * w;
            let eu = u.exp();
            cpow(w, power) * (a * u).exp() / (1.0 - sign * eu)
        },
        &spec,
    )
}

/// `R(z, a)`; requires `0 < σ < √π`.
pub fn big_r(z: Complex, a: f64, cfg: &ZetaConfig) -> Result<QuadResult> {
    check_window(Family::R, cfg.contour.sigma)?;
    check_shift(a)?;
    cfg.contour.validate(false)?;
    kernel_line(z, a, &cfg.contour, 1.0)
}

/// `D(z, a)`; requires `0 < σ < √(π/2)`.
pub fn big_d(z: Complex, a: f64, cfg: &ZetaConfig) -> Result<QuadResult> {
    check_window(Family::D, cfg.contour.sigma)?;
    check_shift(a)?;
    cfg.contour.validate(false)?;
    kernel_line(z, a, &cfg.contour, -1.0)
}

fn guard_positive_integer(s: Complex) -> Result<()> {
    let n = s.re.round();
    if n >= 1.0 && (s - n).norm() < INTEGER_GUARD {
        return Err(PmtError::NearPositiveInteger { s, n: n as u64 });
    }
    Ok(())
}

/// `ζ(s, a) = R(s − 1/2, a) / G(s − 1/2)`.
pub fn hurwitz_zeta(s: Complex, a: f64, cfg: &ZetaConfig) -> Result<Complex> {
    Ok(hurwitz_zeta_result(s, a, cfg)?.value)
}

/// [`hurwitz_zeta`] with the audit of the `R` quadrature, rescaled by `1/G`.
pub fn hurwitz_zeta_result(s: Complex, a: f64, cfg: &ZetaConfig) -> Result<QuadResult> {
    if a == 1.0 && s == Complex::new(1.0, 0.0) {
        return Err(PmtError::PoleAtOne);
    }
    guard_positive_integer(s)?;
    let cfg = ZetaConfig {
        family: Family::R,
        ..*cfg
    };
    let z = s - 0.5;
    Ok(big_r(z, a, &cfg)?.scaled(1.0 / big_g_closed(z)))
}

/// `ζ(s) = R(z) / G(z)`, `z = s − 1/2`.
pub fn riemann_zeta(s: Complex, cfg: &ZetaConfig) -> Result<Complex> {
    hurwitz_zeta(s, 1.0, cfg)
}

/// `η(s) = D(z) / G(z)`, `z = s − 1/2`.
pub fn eta_fn(s: Complex, cfg: &ZetaConfig) -> Result<Complex> {
    Ok(eta_result(s, cfg)?.value)
}

pub fn eta_result(s: Complex, cfg: &ZetaConfig) -> Result<QuadResult> {
    guard_positive_integer(s)?;
    let cfg = ZetaConfig {
        family: Family::D,
        ..*cfg
    };
    let z = s - 0.5;
    Ok(big_d(z, 1.0, &cfg)?.scaled(1.0 / big_g_closed(z)))
}

/// `ζ(s) = (Γ(1−s)/π) ∫ w^{2s−1} / (e^{−w²} − 1) dt`, an alternative code path
/// to [`riemann_zeta`] kept for regression.
pub fn zeta_via_gamma_form(s: Complex, cfg: &ZetaConfig) -> Result<Complex> {
    guard_positive_integer(s)?;
    check_window(Family::R, cfg.contour.sigma)?;
    cfg.contour.validate(false)?;
    let spec = cfg.contour.for_gaussian_envelope(1.0, 2.0 * s);
    let sigma = spec.sigma;
    let power = 2.0 * s - 1.0;
    let res = integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            let neg_u = -(w * w);
            if neg_u.re > 700.0 {
                return Complex::new(0.0, 0.0);
            }
            cpow(w, power) / (neg_u.exp() - 1.0)
        },
        &spec,
    )?;
    Ok(classical::gamma_reference(1.0 - s)? / PI * res.value)
}

/// Jensen's formula `(s−1) ζ(s) = 2π ∫ (1/2+it)^{1−s} / (e^{πt}+e^{−πt})² dt`.
pub fn jensen_oracle(s: Complex) -> Result<Complex> {
    Ok(jensen_result(s)?.value)
}

/// [`jensen_oracle`] with its quadrature audit.
pub fn jensen_result(s: Complex) -> Result<QuadResult> {
    if s == Complex::new(1.0, 0.0) {
        return Err(PmtError::PoleAtOne);
    }
    let e = 1.0 - s;
    let growth = 0.5 * PI * s.im.abs() + (1.0 - s.re).max(0.0) * 4.0;
    let truncation = ((40.0 + growth) / (2.0 * PI)).max(8.0) + 2.0;
    let spec = ContourSpec::new(0.5)
        .with_truncation(truncation)
        .with_step(0.25)
        .with_tol(1e-14);
    let res = integrate_line(
        |t| {
            let base = Complex::new(0.5, t);
            let ch = (PI * t).cosh();
            cpow(base, e) / (4.0 * ch * ch)
        },
        &spec,
    )?;
    Ok(res.scaled(2.0 * PI / (s - 1.0)))
}

/// Reference ζ(s): alternating series for η accelerated by Borwein weights,
/// then `ζ = η / (1 − 2^{1−s})`.
pub fn series_oracle(s: Complex) -> Result<Complex> {
    series::zeta_via_eta(s)
}

/// `ζ(1/2 + iτ) = R(iτ) / G(iτ)` for `|τ| ≤ 30`.
pub fn critical_line_value(tau: f64, cfg: &ZetaConfig) -> Result<Complex> {
    if !(tau.abs() <= TAU_MAX) {
        return Err(PmtError::TauOutOfRange {
            tau,
            tau_max: TAU_MAX,
        });
    }
    let z = Complex::new(0.0, tau);
    let cfg = ZetaConfig {
        family: Family::R,
        ..*cfg
    };
    Ok(big_r(z, 1.0, &cfg)?.value / big_g_closed(z))
}

/// `∫ w^{2s−1} e^{(N+1) w²} / (1 − e^{w²}) dt = R(s − 1/2, N + 1)`: what is
/// left of `R` after the first `N` terms of its geometric expansion.
pub fn truncated_sum_remainder(s: Complex, n: u32, cfg: &ZetaConfig) -> Result<QuadResult> {
    big_r(s - 0.5, (n + 1) as f64, cfg)
}
