//! The Parabolic Mellin Transform `𝒫[f](z) = ∫ w^{2z} f(w²) dt` and its
//! boundary version `𝒫₀[f](z) = lim_{σ↓0} ∫ w^{2z} f(w²) dt`.
//!
//! On the imaginary axis `w = it` the two half-lines combine into
//! `2cos(πz) ∫_0^∞ t^{2z} f(−t²) dt`. Oscillatory weights are damped by
//! `e^{−εt²}` and the damped values are extrapolated to `ε = 0`.

pub mod registry;
pub mod verify;

use serde::{Deserialize, Serialize};

use crate::contour::{cpow, gaussian_truncation, integrate_line, ContourSpec, QuadResult};
use crate::error::{PmtError, Result};
use crate::Complex;

pub use registry::{lookup, registry, Params, WeightEntry, WeightKind, TABLE_ROWS};
pub use verify::{
    dictionary_verify, property_report, property_verify, Property, PropertyParams, ReportRow,
    VerificationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Absolute,
    BoundaryAbel,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Absolute => "absolute",
            Mode::BoundaryAbel => "boundary_abel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extrapolation {
    /// Polynomial (Neville) extrapolation of all damped values to `ε = 0`.
    Richardson,
    /// The value at the smallest `ε`.
    Last,
}

/// Damping parameters for boundary evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelSchedule {
    epsilons: Vec<f64>,
    pub extrapolation: Extrapolation,
    /// Quadrature tolerance for each damped integral.
    pub quad_tol: f64,
}

impl Default for AbelSchedule {
    fn default() -> Self {
        Self {
            epsilons: vec![0.1, 0.05, 0.025, 0.0125, 0.00625],
            extrapolation: Extrapolation::Richardson,
            quad_tol: 1e-11,
        }
    }
}

impl AbelSchedule {
    pub fn new(epsilons: Vec<f64>, extrapolation: Extrapolation) -> Result<Self> {
        if epsilons.is_empty() {
            return Err(PmtError::InvalidSpec("empty Abel schedule".into()));
        }
        if epsilons.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(PmtError::InvalidSpec(
                "Abel epsilons must be positive".into(),
            ));
        }
        if epsilons.windows(2).any(|p| p[1] >= p[0]) {
            return Err(PmtError::InvalidSpec(
                "Abel epsilons must be strictly decreasing".into(),
            ));
        }
        Ok(Self {
            epsilons,
            extrapolation,
            quad_tol: AbelSchedule::default().quad_tol,
        })
    }

    /// The three-point geometric schedule `{0.1, 0.05, 0.025}`.
    pub fn short() -> Self {
        Self::new(vec![0.1, 0.05, 0.025], Extrapolation::Richardson).expect("valid schedule")
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }
}

/// `∫ w^{2z} f(w²) dt` for an arbitrary weight.
///
/// `rate` is the Gaussian decay rate of `f` along the parabola (`f(u) ~ e^{rate·u}`),
/// used to size the truncation; `extra_power` accounts for polynomial growth of
/// `f` in `|w|`.
pub fn pmt_integral<F>(
    weight: F,
    z: Complex,
    spec: &ContourSpec,
    rate: f64,
    extra_power: f64,
) -> Result<QuadResult>
where
    F: Fn(Complex) -> Complex + Sync,
{
    spec.validate(false)?;
    let spec = spec.for_gaussian_envelope(rate, 2.0 * z + extra_power + 1.0);
    let sigma = spec.sigma;
    let power = 2.0 * z;
    integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            cpow(w, power) * weight(w * w)
        },
        &spec,
    )
}

/// Absolute-mode transform of a registry entry.
pub fn pmt_eval(entry: &WeightEntry, z: Complex, cfg: &ContourSpec) -> Result<QuadResult> {
    if entry.mode != Mode::Absolute {
        return Err(PmtError::WrongMode {
            name: entry.name.to_string(),
            mode: Mode::Absolute.label(),
        });
    }
    entry.check_sigma(cfg.sigma)?;
    cfg.validate(false)?;
    if entry.kind == WeightKind::Rational {
        return rational_eval(z, cfg);
    }
    let (rate, extra) = entry.envelope();
    pmt_integral(|u| entry.weight(u), z, cfg, rate, extra)
}

/// The rational kernel `1/(1−u)` decays only like `|w|^{2Re z − 2}`.
///
/// Since `1/(1−u) = −1/u + u^{−1}/(1−u)` and `𝒫[u^{−1}] ≡ 0` (close the line
/// to the right; the only singularity is left of it), `𝒫[f](z) = 𝒫[f](z−1)`.
/// The index is shifted until `Re z ∈ (−3, −2]`, where the tail is `O(|t|^{−6})`.
fn rational_eval(z: Complex, cfg: &ContourSpec) -> Result<QuadResult> {
    let shift = (z.re + 2.0).ceil().max(0.0);
    let z_eff = z - shift;
    let spec = if cfg.auto_truncation {
        ContourSpec {
            truncation: cfg.truncation.max(1000.0),
            ..*cfg
        }
    } else {
        *cfg
    };
    let sigma = spec.sigma;
    let power = 2.0 * z_eff;
    integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            cpow(w, power) / (1.0 - w * w)
        },
        &spec,
    )
}

/// Natural log of the softplus map `t(x) = ln(1 + e^x)`.
fn ln_softplus(x: f64) -> f64 {
    if x < -30.0 {
        let y = x.exp();
        x - 0.5 * y
    } else {
        x.exp().ln_1p().ln()
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// `2cos(πz) ∫_0^∞ t^{2z} g(t²) e^{−εt²} dt`, where `g(x) = f(−x)`.
///
/// The half-line is mapped by `t = ln(1 + e^x)`, which turns the algebraic
/// endpoint at `t = 0` into exponential decay and leaves the far end linear.
/// `t_max` bounds the region that matters; without it the damping decides.
pub fn boundary_integral<G>(
    g: G,
    z: Complex,
    eps: f64,
    tol: f64,
    t_max: Option<f64>,
) -> Result<QuadResult>
where
    G: Fn(f64) -> Complex + Sync,
{
    let p = 2.0 * z.re + 1.0;
    if p <= 0.0 {
        return Err(PmtError::InvalidSpec(format!(
            "boundary transform needs Re(z) > -1/2, got {}",
            z.re
        )));
    }
    let x_lo = ((tol * 1e-4).ln() - 4.0) / p;
    let t_hi = match t_max {
        Some(t) => t,
        None => {
            if eps <= 0.0 {
                return Err(PmtError::InvalidSpec(
                    "undamped boundary integral needs an explicit t_max".into(),
                ));
            }
            let growth = (2.0 * z.re).max(0.0);
            let mut t = 8.0f64;
            while eps * t * t - growth * t.ln() < 40.0 {
                t += 0.5;
            }
            t
        }
    };
    let x_hi = t_hi + 1.0;
    let center = 0.5 * (x_lo + x_hi);
    let half = 0.5 * (x_hi - x_lo);
    let spec = ContourSpec::boundary()
        .with_truncation(half)
        .with_step(0.25)
        .with_tol(tol);
    let two_z = 2.0 * z;
    let res = integrate_line(
        |tau| {
            let x = center + tau;
            let ln_t = ln_softplus(x);
            let t = ln_t.exp();
            let x2 = t * t;
            (two_z * ln_t).exp() * g(x2) * (-eps * x2).exp() * sigmoid(x)
        },
        &spec,
    )?;
    let factor = 2.0 * (std::f64::consts::PI * z).cos();
    Ok(QuadResult {
        sigma_used: 0.0,
        ..res.scaled(factor)
    })
}

/// Values of `ys` (sampled at `xs`) extrapolated to `x = 0` by Neville's scheme.
pub fn neville_at_zero(xs: &[f64], ys: &[Complex]) -> Complex {
    let mut p: Vec<Complex> = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
        }
    }
    p[0]
}

/// Audit record of a boundary evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryResult {
    pub value: Complex,
    /// `(ε, damped value)` pairs, in schedule order.
    pub damped: Vec<(f64, Complex)>,
    /// Difference between the extrapolants with and without the largest ε.
    pub err_est: f64,
    pub nodes: usize,
}

/// Evaluates `g` (the weight on the negative axis) across the schedule and
/// extrapolates to `ε = 0`.
pub fn boundary_limit<G>(g: G, z: Complex, schedule: &AbelSchedule) -> Result<BoundaryResult>
where
    G: Fn(f64) -> Complex + Sync,
{
    let mut damped = Vec::with_capacity(schedule.epsilons.len());
    let mut nodes = 0;
    for &eps in &schedule.epsilons {
        let r = boundary_integral(&g, z, eps, schedule.quad_tol, None)?;
        nodes = nodes.max(r.nodes);
        damped.push((eps, r.value));
    }
    let diffs: Vec<f64> = damped
        .windows(2)
        .map(|p| (p[1].1 - p[0].1).norm())
        .collect();
    let floor = 1e3 * schedule.quad_tol;
    if let Some(i) = diffs
        .windows(2)
        .position(|d| d[1] > d[0] * (1.0 + 1e-9) + floor)
    {
        return Err(PmtError::ExtrapolationDivergence(format!(
            "|I(eps_{}) - I(eps_{})| = {:e} grew from {:e}",
            i + 2,
            i + 1,
            diffs[i + 1],
            diffs[i]
        )));
    }
    let xs: Vec<f64> = damped.iter().map(|d| d.0).collect();
    let ys: Vec<Complex> = damped.iter().map(|d| d.1).collect();
    let (value, err_est) = match schedule.extrapolation {
        Extrapolation::Last => {
            let last = *ys.last().expect("non-empty schedule");
            (last, diffs.last().copied().unwrap_or(0.0))
        }
        Extrapolation::Richardson => {
            let full = neville_at_zero(&xs, &ys);
            let err = if xs.len() > 1 {
                (full - neville_at_zero(&xs[1..], &ys[1..])).norm()
            } else {
                0.0
            };
            (full, err)
        }
    };
    Ok(BoundaryResult {
        value,
        damped,
        err_est,
        nodes,
    })
}

/// Boundary-mode transform of a registry entry.
pub fn pmt_boundary(entry: &WeightEntry, z: Complex, schedule: &AbelSchedule) -> Result<Complex> {
    Ok(pmt_boundary_detailed(entry, z, schedule)?.value)
}

pub fn pmt_boundary_detailed(
    entry: &WeightEntry,
    z: Complex,
    schedule: &AbelSchedule,
) -> Result<BoundaryResult> {
    if entry.mode != Mode::BoundaryAbel {
        return Err(PmtError::WrongMode {
            name: entry.name.to_string(),
            mode: Mode::BoundaryAbel.label(),
        });
    }
    boundary_limit(|x| entry.weight(Complex::new(-x, 0.0)), z, schedule)
}

/// Truncation for a weight with Gaussian decay `rate` on the parabola.
pub fn envelope_truncation(sigma: f64, rate: f64, z: Complex, tol: f64) -> f64 {
    gaussian_truncation(sigma, rate, 2.0 * z, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::big_g_closed;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn neville_recovers_polynomials() {
        let xs = [0.4, 0.2, 0.1, 0.05];
        let ys: Vec<Complex> = xs
            .iter()
            .map(|x| c(3.0 - 2.0 * x + 5.0 * x * x * x, *x))
            .collect();
        assert!((neville_at_zero(&xs, &ys) - c(3.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn schedule_validation() {
        assert!(AbelSchedule::new(vec![0.1, 0.1], Extrapolation::Richardson).is_err());
        assert!(AbelSchedule::new(vec![0.1, -0.05], Extrapolation::Richardson).is_err());
        assert!(AbelSchedule::new(vec![], Extrapolation::Last).is_err());
        assert_eq!(AbelSchedule::short().epsilons(), &[0.1, 0.05, 0.025]);
    }

    #[test]
    fn boundary_gaussian_equals_g() {
        for &z in &[c(-0.35, 0.0), c(0.0, 0.0), c(0.7, 0.4), c(2.0, 0.0)] {
            let r = boundary_limit(|x| c((-x).exp(), 0.0), z, &AbelSchedule::default()).unwrap();
            assert!(
                (r.value - big_g_closed(z)).norm() < 1e-6,
                "{z}: {}",
                r.value
            );
        }
    }

    #[test]
    fn boundary_cosine_is_fresnel() {
        let r = boundary_limit(|x| c(x.cos(), 0.0), c(0.0, 0.0), &AbelSchedule::default()).unwrap();
        assert!((r.value.re - (PI / 2.0).sqrt()).abs() < 1e-6, "{}", r.value);
    }
}
