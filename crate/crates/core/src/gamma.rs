//! The Gaussian-weight transform `G(z) = ∫ w^{2z} e^{w²} dt` and the Gamma
//! family it generates: `G(z) = cos(πz) Γ(z+1/2) = π / Γ(1/2 − z)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classical;
use crate::contour::{cpow, integrate_line, ContourSpec, QuadResult};
use crate::error::{PmtError, Result};
use crate::Complex;

pub use crate::classical::gamma_reference;

/// Distance from an integer inside which `gamma_fn` and `digamma` refuse.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaConfig {
    pub contour: ContourSpec,
    pub oracle_tol: f64,
}

impl Default for GammaConfig {
    fn default() -> Self {
        Self {
            contour: ContourSpec::new(1.0),
            oracle_tol: 1e-10,
        }
    }
}

impl GammaConfig {
    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.contour.sigma = sigma;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.contour.tol = tol;
        self
    }

    fn validated(&self) -> Result<ContourSpec> {
        self.contour.validate(false)?;
        Ok(self.contour)
    }
}

/// `∫ w^{p} e^{α w²} g(w) dt` with the truncation fitted to the Gaussian envelope.
pub(crate) fn gaussian_line<F>(
    power: Complex,
    alpha: f64,
    spec: &ContourSpec,
    extra: F,
) -> Result<QuadResult>
where
    F: Fn(Complex) -> Complex + Sync,
{
    let spec = spec.for_gaussian_envelope(alpha, power + 1.0);
    let sigma = spec.sigma;
    integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            cpow(w, power) * (alpha * w * w).exp() * extra(w)
        },
        &spec,
    )
}

/// `G(z)` by quadrature.
pub fn big_g(z: Complex, cfg: &GammaConfig) -> Result<QuadResult> {
    let spec = cfg.validated()?;
    gaussian_line(2.0 * z, 1.0, &spec, |_| Complex::new(1.0, 0.0))
}

/// `G(z) = π / Γ(1/2 − z)` through the reference Gamma.
pub fn big_g_closed(z: Complex) -> Complex {
    PI * classical::rgamma_reference(0.5 - z)
}

/// `G(z, α) = ∫ w^{2z} e^{α w²} dt = α^{−(z+1/2)} G(z)`.
pub fn big_g_scaled(z: Complex, alpha: f64, cfg: &GammaConfig) -> Result<QuadResult> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(PmtError::InvalidScale(alpha));
    }
    let spec = cfg.validated()?;
    gaussian_line(2.0 * z, alpha, &spec, |_| Complex::new(1.0, 0.0))
}

/// `1/Γ(s) = G(1/2 − s) / π`; entire.
pub fn reciprocal_gamma(s: Complex, cfg: &GammaConfig) -> Result<Complex> {
    Ok(reciprocal_gamma_result(s, cfg)?.value)
}

/// [`reciprocal_gamma`] with the quadrature audit attached.
pub fn reciprocal_gamma_result(s: Complex, cfg: &GammaConfig) -> Result<QuadResult> {
    Ok(big_g(0.5 - s, cfg)?.scaled(Complex::new(1.0 / PI, 0.0)))
}

fn nearest_integer_distance(s: Complex) -> f64 {
    Complex::new(s.re - s.re.round(), s.im).norm()
}

/// `Γ(s) = G(s − 1/2) / sin(πs)`.
pub fn gamma_fn(s: Complex, cfg: &GammaConfig) -> Result<Complex> {
    Ok(gamma_result(s, cfg)?.value)
}

pub fn gamma_result(s: Complex, cfg: &GammaConfig) -> Result<QuadResult> {
    if nearest_integer_distance(s) < POLE_GUARD {
        return Err(PmtError::NearPole { s });
    }
    Ok(big_g(s - 0.5, cfg)?.scaled(1.0 / (PI * s).sin()))
}

/// ψ(z) as the ratio `∫ w^{1−2z} e^{w²} log(w²) dt / ∫ w^{1−2z} e^{w²} dt`.
pub fn digamma(z: Complex, cfg: &GammaConfig) -> Result<Complex> {
    Ok(digamma_result(z, cfg)?.value)
}

/// [`digamma`] with first-order error propagation through the ratio; `nodes`
/// counts both quadratures.
pub fn digamma_result(z: Complex, cfg: &GammaConfig) -> Result<QuadResult> {
    if z.re < 0.5 && nearest_integer_distance(z) < POLE_GUARD && z.re.round() <= 0.0 {
        return Err(PmtError::NearPole { s: z });
    }
    let spec = cfg.validated()?;
    let power = 1.0 - 2.0 * z;
    let num = gaussian_line(power, 1.0, &spec, |w| 2.0 * w.ln())?;
    let den = gaussian_line(power, 1.0, &spec, |_| Complex::new(1.0, 0.0))?;
    let floor = 1e-8 * den.abs_mass.max(f64::MIN_POSITIVE);
    let d = den.value.norm();
    if d < floor.max(10.0 * den.err_est) {
        return Err(PmtError::DenominatorUnderflow {
            value: d,
            mass: den.abs_mass,
        });
    }
    let value = num.value / den.value;
    Ok(QuadResult {
        value,
        err_est: (num.err_est + value.norm() * den.err_est) / d,
        nodes: num.nodes + den.nodes,
        sigma_used: den.sigma_used,
        abs_mass: num.abs_mass / d,
    })
}

/// Euler's constant `γ = −(1/π) ∫ w^{−1} e^{w²} log(w²) dt`.
pub fn euler_gamma(cfg: &GammaConfig) -> Result<f64> {
    let res = euler_gamma_result(cfg)?;
    let tol = cfg.contour.tol.max(res.err_est) * 10.0;
    if res.value.im.abs() > tol {
        return Err(PmtError::ImaginaryResidue {
            im: res.value.im,
            tol,
        });
    }
    Ok(res.value.re)
}

/// The scaled quadrature behind [`euler_gamma`].
pub fn euler_gamma_result(cfg: &GammaConfig) -> Result<QuadResult> {
    let spec = cfg.validated()?;
    let res = gaussian_line(Complex::new(-1.0, 0.0), 1.0, &spec, |w| 2.0 * w.ln())?;
    Ok(res.scaled(Complex::new(-1.0 / PI, 0.0)))
}
