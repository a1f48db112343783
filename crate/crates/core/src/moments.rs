//! Complex absolute moments from the moment-generating function:
//! `E|X|^r = Γ(r+1)/(2π) ∫ (M(σ+it) + M(−σ−it)) / (σ+it)^{r+1} dt`.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;

use crate::classical::gamma_reference;
use crate::contour::{cpow, gaussian_truncation, integrate_line, ContourSpec, QuadResult};
use crate::error::{PmtError, Result};
use crate::Complex;

/// How `M(σ+it)` behaves as `|t| → ∞`; decides the truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// `|M| ~ e^{−rate·t²}`.
    Gaussian { rate: f64 },
    /// Bounded, oscillating like `e^{±i·freq·t}`; a smooth taper is exact to
    /// `~e^{−(freq·W)²/4}`.
    Oscillatory { freq: f64 },
    /// Non-oscillating algebraic decay; the taper acts as a plain truncation.
    Algebraic,
}

type MgfFn = Arc<dyn Fn(Complex) -> Complex + Send + Sync>;
type SamplerFn = Arc<dyn Fn(&mut ChaCha8Rng) -> f64 + Send + Sync>;
type ClosedFn = Arc<dyn Fn(Complex) -> Result<Complex> + Send + Sync>;

#[derive(Clone)]
pub struct MgfSpec {
    pub name: String,
    pub mgf: MgfFn,
    /// Supremum of σ with `E[e^{±σX}] < ∞`.
    pub sigma_max: f64,
    pub tail: Tail,
    pub sampler: Option<SamplerFn>,
    pub closed_form: Option<ClosedFn>,
}

impl std::fmt::Debug for MgfSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MgfSpec")
            .field("name", &self.name)
            .field("sigma_max", &self.sigma_max)
            .field("tail", &self.tail)
            .field("sampler", &self.sampler.is_some())
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

impl MgfSpec {
    /// A user-defined distribution without sampler or closed form.
    pub fn custom<F>(name: &str, mgf: F, sigma_max: f64, tail: Tail) -> Result<Self>
    where
        F: Fn(Complex) -> Complex + Send + Sync + 'static,
    {
        if !(sigma_max > 0.0) {
            return Err(PmtError::InvalidSpec(format!(
                "sigma_max must be positive, got {sigma_max}"
            )));
        }
        let at_zero = mgf(Complex::new(0.0, 0.0));
        if (at_zero - 1.0).norm() > 1e-12 {
            return Err(PmtError::InvalidSpec(format!(
                "M(0) = {at_zero}, expected 1"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            mgf: Arc::new(mgf),
            sigma_max,
            tail,
            sampler: None,
            closed_form: None,
        })
    }

    pub fn with_sampler<S>(mut self, sampler: S) -> Self
    where
        S: Fn(&mut ChaCha8Rng) -> f64 + Send + Sync + 'static,
    {
        self.sampler = Some(Arc::new(sampler));
        self
    }

    pub fn with_closed_form<C>(mut self, closed: C) -> Self
    where
        C: Fn(Complex) -> Result<Complex> + Send + Sync + 'static,
    {
        self.closed_form = Some(Arc::new(closed));
        self
    }

    /// `N(μ, s²)`; closed-form moments only for `μ = 0`.
    pub fn normal(mu: f64, s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(PmtError::InvalidSpec(format!(
                "normal scale must be positive, got {s}"
            )));
        }
        let spec = Self::custom(
            "normal",
            move |w| (mu * w + 0.5 * s * s * w * w).exp(),
            f64::INFINITY,
            Tail::Gaussian { rate: 0.5 * s * s },
        )?
        .with_sampler(move |rng| mu + s * rng.sample::<f64, _>(StandardNormal));
        if mu != 0.0 {
            return Ok(spec);
        }
        // E|X|^r = s^r 2^{r/2} Γ((r+1)/2) / √π
        Ok(spec.with_closed_form(move |r| {
            Ok(
                (r * s.ln()).exp()
                    * (0.5 * r * 2f64.ln()).exp()
                    * gamma_reference(0.5 * (r + 1.0))?
                    / PI.sqrt(),
            )
        }))
    }

    /// Centered Laplace with scale `b`: `M(w) = 1/(1 − b²w²)`.
    pub fn laplace(b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(PmtError::InvalidSpec(format!(
                "laplace scale must be positive, got {b}"
            )));
        }
        Ok(Self::custom(
            "laplace",
            move |w| 1.0 / (1.0 - b * b * w * w),
            1.0 / b,
            Tail::Algebraic,
        )?
        .with_sampler(move |rng| {
            let e: f64 = rng.sample(Exp1);
            if rng.random_bool(0.5) {
                b * e
            } else {
                -b * e
            }
        })
        .with_closed_form(move |r| Ok((r * b.ln()).exp() * gamma_reference(r + 1.0)?)))
    }

    /// `±1` with equal probability.
    pub fn bernoulli() -> Self {
        Self::custom(
            "bernoulli",
            |w| w.cosh(),
            f64::INFINITY,
            Tail::Oscillatory { freq: 1.0 },
        )
        .expect("valid catalog entry")
        .with_sampler(|rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
        .with_closed_form(|_| Ok(Complex::new(1.0, 0.0)))
    }

    /// Uniform on `(−1, 1)`: `M(w) = sinh(w)/w`.
    pub fn uniform() -> Self {
        Self::custom(
            "uniform",
            sinhc,
            f64::INFINITY,
            Tail::Oscillatory { freq: 1.0 },
        )
        .expect("valid catalog entry")
        .with_sampler(|rng| rng.random_range(-1.0..1.0))
        .with_closed_form(|r| Ok(1.0 / (r + 1.0)))
    }

    /// `min(1, σ_max / 2)`.
    pub fn default_sigma(&self) -> f64 {
        (self.sigma_max / 2.0).min(1.0)
    }
}

fn sinhc(w: Complex) -> Complex {
    if w.norm() < 1e-4 {
        let w2 = w * w;
        1.0 + w2 / 6.0 + w2 * w2 / 120.0
    } else {
        w.sinh() / w
    }
}

/// Standard normal, Laplace(1/2), symmetric Bernoulli, Uniform(−1, 1).
pub fn catalog() -> Vec<MgfSpec> {
    vec![
        MgfSpec::normal(0.0, 1.0).expect("valid catalog entry"),
        MgfSpec::laplace(0.5).expect("valid catalog entry"),
        MgfSpec::bernoulli(),
        MgfSpec::uniform(),
    ]
}

pub fn by_name(name: &str) -> Result<MgfSpec> {
    catalog()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| PmtError::UnknownEntry(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentConfig {
    pub tol: f64,
    /// Where the taper for non-Gaussian tails is centred.
    pub taper_start: f64,
    /// Taper width at unit oscillation frequency.
    pub taper_width: f64,
    pub max_nodes: usize,
}

impl Default for MomentConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            taper_start: 1e3,
            taper_width: 16.0,
            max_nodes: crate::contour::DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    pub value: Complex,
    /// The bare line integral, before the `Γ(r+1)/2π` factor.
    pub integral: QuadResult,
}

fn check_order(r: Complex) -> Result<()> {
    if !(r.re > 0.0) {
        return Err(PmtError::InvalidOrder(r));
    }
    Ok(())
}

/// `∫ K(σ+it) (σ+it)^{−r−1} dt`, sized for the tail of `K`.
fn moment_line<K>(
    kernel: K,
    r: Complex,
    sigma: f64,
    tail: Tail,
    cfg: &MomentConfig,
) -> Result<QuadResult>
where
    K: Fn(Complex) -> Complex + Sync,
{
    let power = -(r + 1.0);
    let base = ContourSpec::new(sigma)
        .with_tol(cfg.tol)
        .with_max_nodes(cfg.max_nodes);
    match tail {
        Tail::Gaussian { rate } => {
            let t = gaussian_truncation(sigma, rate, power, cfg.tol);
            integrate_line(
                |t| {
                    let w = Complex::new(sigma, t);
                    kernel(w) * cpow(w, power)
                },
                &base.with_truncation(t),
            )
        }
        Tail::Oscillatory { .. } | Tail::Algebraic => {
            let width = match tail {
                Tail::Oscillatory { freq } => cfg.taper_width / freq,
                _ => cfg.taper_width,
            };
            let t0 = cfg.taper_start;
            let t = t0 + 6.0 * width;
            integrate_line(
                |t| {
                    let w = Complex::new(sigma, t);
                    let taper = 0.5 * libm::erfc((t.abs() - t0) / width);
                    kernel(w) * cpow(w, power) * taper
                },
                &base.with_truncation(t),
            )
        }
    }
}

/// `E|X|^r` for `Re r > 0`; `sigma` defaults to `min(1, σ_max/2)`.
pub fn absolute_moment(
    dist: &MgfSpec,
    r: Complex,
    sigma: Option<f64>,
    cfg: &MomentConfig,
) -> Result<MomentResult> {
    check_order(r)?;
    let sigma = sigma.unwrap_or_else(|| dist.default_sigma());
    if !(sigma > 0.0 && sigma < dist.sigma_max) {
        return Err(PmtError::SigmaExceedsDomain {
            sigma,
            sigma_max: dist.sigma_max,
        });
    }
    let m = &dist.mgf;
    let integral = moment_line(|w| m(w) + m(-w), r, sigma, dist.tail, cfg)?;
    let factor = gamma_reference(r + 1.0)? / (2.0 * PI);
    Ok(MomentResult {
        value: integral.value * factor,
        integral,
    })
}

/// Upper bound on `∫|integrand| dt` from the absolute-convergence argument:
/// `e^{π|Im r|} [M(σ)+M(−σ)] √π Γ(Re r/2) / (σ^{Re r} Γ((Re r+1)/2))`.
pub fn fubini_bound(dist: &MgfSpec, r: Complex, sigma: f64) -> Result<f64> {
    check_order(r)?;
    let m = &dist.mgf;
    let edge = (m(Complex::new(sigma, 0.0)) + m(Complex::new(-sigma, 0.0))).norm();
    let a = r.re;
    let ratio = gamma_reference(Complex::new(a / 2.0, 0.0))?.re
        / gamma_reference(Complex::new((a + 1.0) / 2.0, 0.0))?.re;
    Ok((PI * r.im.abs()).exp() * edge * PI.sqrt() * ratio / sigma.powf(a))
}

/// `| Γ(r+1)/(2π) ∫ (e^{wx} + e^{−wx}) / w^{r+1} dt − |x|^r |`.
pub fn abs_power_check(x: f64, r: Complex, cfg: &MomentConfig) -> Result<f64> {
    if x == 0.0 {
        return Err(PmtError::ZeroArgument);
    }
    check_order(r)?;
    let ax = x.abs();
    let sigma = 1.0 / ax;
    let integral = moment_line(
        |w| (w * x).exp() + (-w * x).exp(),
        r,
        sigma,
        Tail::Oscillatory { freq: ax },
        cfg,
    )?;
    let computed = integral.value * gamma_reference(r + 1.0)? / (2.0 * PI);
    let exact = (r * ax.ln()).exp();
    Ok((computed - exact).norm())
}

const MC_CHUNK: usize = 1 << 16;

/// Runs `f` over `n` draws in fixed chunks, each on its own ChaCha stream.
fn mc_chunks<F>(sampler: &SamplerFn, n: usize, seed: u64, f: F) -> Vec<(Complex, f64, usize)>
where
    F: Fn(f64) -> Complex + Sync,
{
    let chunks = n.div_ceil(MC_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = MC_CHUNK.min(n - c * MC_CHUNK);
            let mut sum = Complex::new(0.0, 0.0);
            let mut sq = 0.0;
            for _ in 0..len {
                let y = f(sampler(&mut rng));
                sum += y;
                sq += y.norm_sqr();
            }
            (sum, sq, len)
        })
        .collect()
}

fn mean_and_stderr(parts: &[(Complex, f64, usize)]) -> (Complex, f64) {
    let n: usize = parts.iter().map(|p| p.2).sum();
    let sum = parts.iter().fold(Complex::new(0.0, 0.0), |a, p| a + p.0);
    let sq: f64 = parts.iter().map(|p| p.1).sum();
    let nf = n as f64;
    let mean = sum / nf;
    let var = ((sq - nf * mean.norm_sqr()) / (nf - 1.0).max(1.0)).max(0.0);
    (mean, (var / nf).sqrt())
}

/// Sample mean of `|X|^r` and its standard error; deterministic for a fixed seed.
pub fn monte_carlo_moment(
    dist: &MgfSpec,
    r: Complex,
    n: usize,
    seed: u64,
) -> Result<(Complex, f64)> {
    check_order(r)?;
    let sampler = dist
        .sampler
        .as_ref()
        .ok_or_else(|| PmtError::NoSampler(dist.name.clone()))?;
    if n < 2 {
        return Err(PmtError::InvalidSpec(
            "Monte Carlo needs at least two draws".into(),
        ));
    }
    let parts = mc_chunks(sampler, n, seed, |x| {
        let a = x.abs();
        if a == 0.0 {
            Complex::new(0.0, 0.0)
        } else {
            (r * a.ln()).exp()
        }
    });
    Ok(mean_and_stderr(&parts))
}

/// Sample mean of `e^{wX}` for real `w`, with its standard error.
pub fn empirical_mgf(dist: &MgfSpec, w: f64, n: usize, seed: u64) -> Result<(f64, f64)> {
    let sampler = dist
        .sampler
        .as_ref()
        .ok_or_else(|| PmtError::NoSampler(dist.name.clone()))?;
    let parts = mc_chunks(sampler, n, seed, |x| Complex::new((w * x).exp(), 0.0));
    let (m, se) = mean_and_stderr(&parts);
    Ok((m.re, se))
}
