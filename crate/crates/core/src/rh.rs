//! The symmetrized function `S(z) = ½[R(z) − R(−z) + D(z) − D(−z)]`, its
//! critical-line restriction `𝒳(τ) = ∫ sin(τ log u_t) / sinh(u_t) dt`, a
//! sign-change zero scanner and the Lindelöf growth table.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contour::{cpow, integrate_line, ContourSpec};
use crate::error::{PmtError, Result};
use crate::gamma::big_g_closed;
use crate::zeta::{
    big_d, big_r, series_oracle, Family, ZetaConfig, D_DEFAULT_SIGMA, D_SIGMA_MAX, TAU_MAX,
};
use crate::Complex;

/// Below this `|ζ(1/2 + iτ*)|` a root of `𝒳` is classed as a zeta zero.
pub const ZETA_ZERO_THRESHOLD: f64 = 1e-3;

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.0 && sigma < D_SIGMA_MAX) {
        return Err(PmtError::SigmaOutOfWindow {
            sigma,
            lo: 0.0,
            hi: D_SIGMA_MAX,
        });
    }
    Ok(())
}

/// `1/sinh(u)` without overflow for large `|Re u|`.
fn csch(u: Complex) -> Complex {
    if u.re < 0.0 {
        let e = u.exp();
        -2.0 * e / (1.0 - e * e)
    } else {
        let e = (-u).exp();
        2.0 * e / (1.0 - e * e)
    }
}

/// `S(z)` from its four defining transforms.
pub fn s_symmetric(z: Complex, spec: &ContourSpec) -> Result<Complex> {
    check_sigma(spec.sigma)?;
    let cfg = ZetaConfig {
        contour: *spec,
        ..ZetaConfig::d()
    };
    let r = big_r(z, 1.0, &cfg)?.value - big_r(-z, 1.0, &cfg)?.value;
    let d = big_d(z, 1.0, &cfg)?.value - big_d(-z, 1.0, &cfg)?.value;
    Ok(0.5 * (r + d))
}

/// `S(z) = −∫ sinh(z log u_t) / sinh(u_t) dt`.
pub fn s_symmetric_sinh(z: Complex, spec: &ContourSpec) -> Result<Complex> {
    Ok(-sinh_form(z, spec)?.value)
}

fn sinh_form(z: Complex, spec: &ContourSpec) -> Result<crate::QuadResult> {
    check_sigma(spec.sigma)?;
    spec.validate(false)?;
    let growth = Complex::new(2.0 * z.re.abs() + 1.0, 2.0 * z.im.abs());
    let spec = spec.for_gaussian_envelope(1.0, growth);
    let sigma = spec.sigma;
    let two_z = 2.0 * z;
    integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            let up = cpow(w, two_z);
            0.5 * (up - 1.0 / up) * csch(w * w)
        },
        &spec,
    )
}

/// Default contour for `𝒳`: `σ = 1.2`.
pub fn chi_spec() -> ContourSpec {
    ContourSpec::new(D_DEFAULT_SIGMA)
}

/// `𝒳(τ) = i S(iτ)`, real for real `τ`.
pub fn chi_tau(tau: f64, spec: &ContourSpec) -> Result<f64> {
    if !(tau.abs() <= TAU_MAX) {
        return Err(PmtError::TauOutOfRange {
            tau,
            tau_max: TAU_MAX,
        });
    }
    let res = sinh_form(Complex::new(0.0, tau), spec)?;
    // ∫ sinh(iτ log u)/sinh(u) = i ∫ sin(τ log u)/sinh(u)
    let chi = res.value / Complex::i();
    let floor = spec.tol.max(1e3 * f64::EPSILON * res.abs_mass) + res.err_est;
    if chi.im.abs() > floor.max(1e-9 * (1.0 + chi.re.abs())) {
        return Err(PmtError::ImaginaryResidue {
            im: chi.im,
            tol: floor,
        });
    }
    Ok(chi.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub tau_min: f64,
    pub tau_max: f64,
    pub coarse_step: f64,
    pub refine_tol: f64,
    pub sigma: f64,
}

impl ScanConfig {
    pub fn new(tau_min: f64, tau_max: f64) -> Self {
        Self {
            tau_min,
            tau_max,
            coarse_step: 0.05,
            refine_tol: 1e-6,
            sigma: D_DEFAULT_SIGMA,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.coarse_step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_min < self.tau_max) {
            return Err(PmtError::InvalidScan(format!(
                "tau_min {} must be below tau_max {}",
                self.tau_min, self.tau_max
            )));
        }
        if !(self.coarse_step > 0.0) || !(self.refine_tol > 0.0) {
            return Err(PmtError::InvalidScan(
                "step and refine_tol must be positive".into(),
            ));
        }
        for tau in [self.tau_min, self.tau_max] {
            if tau.abs() > TAU_MAX {
                return Err(PmtError::TauOutOfRange {
                    tau,
                    tau_max: TAU_MAX,
                });
            }
        }
        check_sigma(self.sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    ZetaZero,
    SymmetrizationArtifact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub tau: f64,
    /// `|𝒳(τ*)|`.
    pub residual: f64,
    pub classification: RootKind,
    pub zeta_modulus: f64,
    /// Slope of `𝒳` across the final bracket.
    pub slope: f64,
}

/// Brackets sign changes of `𝒳` on the coarse grid and bisects each to `refine_tol`.
pub fn scan_zeros(cfg: &ScanConfig) -> Result<Vec<RootRecord>> {
    cfg.validate()?;
    let spec = ContourSpec::new(cfg.sigma);
    let n = ((cfg.tau_max - cfg.tau_min) / cfg.coarse_step).ceil() as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|i| (cfg.tau_min + i as f64 * cfg.coarse_step).min(cfg.tau_max))
        .collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&tau| chi_tau(tau, &spec))
        .collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            brackets.push((grid[i], grid[i], 0.0, 0.0));
        } else if i + 1 < grid.len() && values[i] * values[i + 1] < 0.0 {
            brackets.push((grid[i], grid[i + 1], values[i], values[i + 1]));
        }
    }
    brackets
        .par_iter()
        .map(|&(a, b, fa, fb)| refine(a, b, fa, fb, cfg.refine_tol, &spec))
        .collect()
}

fn refine(
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    tol: f64,
    spec: &ContourSpec,
) -> Result<RootRecord> {
    let width = b - a;
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = chi_tau(m, spec)?;
        if fm == 0.0 {
            a = m;
            b = m;
            fa = 0.0;
            fb = 0.0;
            break;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let tau = 0.5 * (a + b);
    let residual = chi_tau(tau, spec)?.abs();
    let slope = if b > a {
        (fb - fa) / (b - a)
    } else {
        let h = (width * 1e-3).max(1e-6);
        (chi_tau(tau + h, spec)? - chi_tau(tau - h, spec)?) / (2.0 * h)
    };
    let zeta_modulus = series_oracle(Complex::new(0.5, tau))?.norm();
    let classification = if zeta_modulus < ZETA_ZERO_THRESHOLD {
        RootKind::ZetaZero
    } else {
        RootKind::SymmetrizationArtifact
    };
    Ok(RootRecord {
        tau,
        residual,
        classification,
        zeta_modulus,
        slope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LindelofRow {
    pub tau: f64,
    /// `|R(iτ)|` by quadrature.
    pub r_abs: f64,
    /// `|R(iτ)| e^{−π|τ|/2}`.
    pub normalized: f64,
    /// `|G(iτ)|` in closed form.
    pub g_abs: f64,
}

impl LindelofRow {
    /// `|ζ(1/2+iτ)|` implied by the row.
    pub fn zeta_abs(&self) -> f64 {
        self.r_abs / self.g_abs
    }
}

pub fn lindelof_table(tau_grid: &[f64], cfg: &ZetaConfig) -> Result<Vec<LindelofRow>> {
    if let Some(&tau) = tau_grid.iter().find(|t| !(t.abs() <= TAU_MAX)) {
        return Err(PmtError::TauOutOfRange {
            tau,
            tau_max: TAU_MAX,
        });
    }
    let cfg = ZetaConfig {
        family: Family::R,
        ..*cfg
    };
    tau_grid
        .par_iter()
        .map(|&tau| {
            let z = Complex::new(0.0, tau);
            let r_abs = big_r(z, 1.0, &cfg)?.value.norm();
            Ok(LindelofRow {
                tau,
                r_abs,
                normalized: r_abs * (-PI * tau.abs() / 2.0).exp(),
                g_abs: big_g_closed(z).norm(),
            })
        })
        .collect()
}
