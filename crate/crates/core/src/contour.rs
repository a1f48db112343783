//! Vertical-line contour quadrature.
//!
//! Every integral in this crate has the shape `∫ F(σ + it) dt` over the real
//! line, where `F` is analytic in a strip around the path and decays either
//! like a Gaussian or algebraically. For such integrands the uniform
//! trapezoid rule converges geometrically in the node spacing, so the engine
//! is deliberately simple: trapezoid on `[-T, T]`, halve the step until two
//! successive estimates agree, and report the last difference as the error
//! estimate.
//!
//! Node values may be computed in parallel, but they are always collected in
//! index order and reduced with a fixed pairwise tree, so results are
//! bit-identical for any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{PmtError, Result};
use crate::Complex;

/// Default absolute tolerance for interior (σ > 0) contours.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default absolute tolerance for boundary (σ = 0, Abel-damped) evaluations.
pub const BOUNDARY_TOL: f64 = 1e-6;
/// Smallest truncation half-width the envelope rule will pick.
pub const MIN_TRUNCATION: f64 = 8.0;
pub const DEFAULT_STEP: f64 = 0.5;
pub const DEFAULT_MAX_NODES: usize = 1 << 22;

/// Roundoff floor, in units of `f64::EPSILON * ∫|F|`, below which two
/// refinements are considered indistinguishable.
pub const NOISE_FACTOR: f64 = 512.0;

const PARALLEL_THRESHOLD: usize = 4096;
const MIN_HALVINGS: usize = 2;

/// Parameters of the path `w = σ + it`, `t ∈ [-T, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub sigma: f64,
    /// Half-width `T` of the `t` interval.
    pub truncation: f64,
    /// Initial node spacing.
    pub step: f64,
    /// Target absolute error.
    pub tol: f64,
    pub max_nodes: usize,
    /// When set, call sites may raise `truncation` to cover their integrand's
    /// decay envelope. Cleared by [`ContourSpec::with_truncation`].
    pub auto_truncation: bool,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self::new(1.0)
    }
}

impl ContourSpec {
    pub fn new(sigma: f64) -> Self {
        Self {
            sigma,
            truncation: MIN_TRUNCATION,
            step: DEFAULT_STEP,
            tol: DEFAULT_TOL,
            max_nodes: DEFAULT_MAX_NODES,
            auto_truncation: true,
        }
    }

    /// Spec for the imaginary-axis boundary (`σ = 0`).
    pub fn boundary() -> Self {
        Self {
            tol: BOUNDARY_TOL,
            ..Self::new(0.0)
        }
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    /// Fixes the truncation half-width; envelope adjustment is disabled.
    pub fn with_truncation(mut self, truncation: f64) -> Self {
        self.truncation = truncation;
        self.auto_truncation = false;
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    /// Number of nodes of the initial (coarsest) trapezoid grid.
    pub fn initial_nodes(&self) -> usize {
        (2.0 * self.truncation / self.step).ceil() as usize + 1
    }

    /// Checks the structural invariants. `boundary` admits `σ = 0`.
    pub fn validate(&self, boundary: bool) -> Result<()> {
        let bad = |msg: String| Err(PmtError::InvalidSpec(msg));
        if !self.sigma.is_finite() || self.sigma < 0.0 {
            return bad(format!("sigma must be finite and >= 0, got {}", self.sigma));
        }
        if self.sigma == 0.0 && !boundary {
            return bad("sigma = 0 is only allowed in boundary mode".into());
        }
        if !(self.truncation.is_finite() && self.truncation > 0.0) {
            return bad(format!("truncation must be > 0, got {}", self.truncation));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return bad(format!("step must be > 0, got {}", self.step));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad(format!("tol must be > 0, got {}", self.tol));
        }
        if self.max_nodes < 16 {
            return bad(format!("max_nodes must be >= 16, got {}", self.max_nodes));
        }
        if self.initial_nodes() > self.max_nodes {
            return bad(format!(
                "initial grid needs {} nodes, max_nodes is {}",
                self.initial_nodes(),
                self.max_nodes
            ));
        }
        Ok(())
    }

    /// Raises the truncation (if automatic) so that an integrand bounded by
    /// `|w^power| · e^{rate·Re(w²)}` is below `tol/10` past `±T`.
    pub fn for_gaussian_envelope(&self, rate: f64, power: Complex) -> Self {
        let mut spec = *self;
        if spec.auto_truncation {
            spec.truncation = spec
                .truncation
                .max(gaussian_truncation(spec.sigma, rate, power, spec.tol));
        }
        spec
    }
}

/// Audited output of a contour integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex,
    /// Absolute difference between the last two refinements.
    pub err_est: f64,
    /// Nodes of the finest grid used.
    pub nodes: usize,
    pub sigma_used: f64,
    /// `∫|F| dt` on the finest grid; the scale against which cancellation is judged.
    pub abs_mass: f64,
}

impl QuadResult {
    /// Rescales value, error and mass by a constant factor.
    pub fn scaled(self, factor: Complex) -> Self {
        let k = factor.norm();
        Self {
            value: self.value * factor,
            err_est: self.err_est * k,
            abs_mass: self.abs_mass * k,
            ..self
        }
    }
}

/// `w^e = exp(e · log w)` on the principal branch, `arg w ∈ (-π, π]`.
///
/// Bases on the cut `(-∞, 0]` are rejected: the crate only ever needs powers
/// on the open right half-plane and on the parabola images of vertical lines.
pub fn principal_power(w: Complex, e: Complex) -> Result<Complex> {
    if !(w.re.is_finite() && w.im.is_finite() && e.re.is_finite() && e.im.is_finite()) {
        return Err(PmtError::NonFinite {
            what: format!("principal_power({w}, {e})"),
        });
    }
    if w.re == 0.0 && w.im == 0.0 {
        if e.re > 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        return Err(PmtError::ZeroBase { e });
    }
    if w.im == 0.0 && w.re < 0.0 {
        return Err(PmtError::BranchCut { w });
    }
    let v = cpow(w, e);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(PmtError::NonFinite {
            what: format!("principal_power({w}, {e})"),
        });
    }
    Ok(v)
}

/// Unchecked principal power for hot loops where `Re(w) > 0` is guaranteed.
#[inline]
pub(crate) fn cpow(w: Complex, e: Complex) -> Complex {
    (e * w.ln()).exp()
}

/// Image `u = (σ + it)²` of a point on the vertical line.
pub fn map_to_parabola(sigma: f64, t: f64) -> Complex {
    Complex::new(sigma * sigma - t * t, 2.0 * sigma * t)
}

/// Smallest `T ≥ 8` at which `|w|^{Re p} e^{π|Im p|/2} e^{rate(σ² - T²)}`,
/// weighted by the Gaussian tail factor, drops below `tol / 10`.
pub fn gaussian_truncation(sigma: f64, rate: f64, power: Complex, tol: f64) -> f64 {
    assert!(
        rate > 0.0,
        "gaussian_truncation needs a positive decay rate"
    );
    let target = (tol / 10.0).ln();
    let log_bound = |t: f64| {
        let r2 = sigma * sigma + t * t;
        rate * (sigma * sigma - t * t)
            + 0.5 * power.re * r2.ln()
            + 0.5 * std::f64::consts::PI * power.im.abs()
            - (2.0 * rate * t).ln()
    };
    let mut t = MIN_TRUNCATION;
    while log_bound(t) > target && t < 1e4 {
        t += 0.25;
    }
    t
}

/// Deterministic pairwise (tree) summation.
pub fn pairwise_sum(values: &[Complex]) -> Complex {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().fold(Complex::new(0.0, 0.0), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

fn pairwise_sum_real(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_real(&values[..mid]) + pairwise_sum_real(&values[mid..])
}

fn evaluate_nodes<F>(f: &F, nodes: &[f64]) -> Result<Vec<Complex>>
where
    F: Fn(f64) -> Complex + Sync,
{
    let values: Vec<Complex> = if nodes.len() >= PARALLEL_THRESHOLD {
        nodes.par_iter().map(|&t| f(t)).collect()
    } else {
        nodes.iter().map(|&t| f(t)).collect()
    };
    if let Some((i, _)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(PmtError::IntegrandFailure { t: nodes[i] });
    }
    Ok(values)
}

/// Trapezoid rule over `[-T, T]` with step halving.
///
/// Refinement stops once at least two halvings have been done and the last
/// two estimates differ by less than `max(tol, NOISE_FACTOR·ε·∫|F|)`.
pub fn integrate_line<F>(integrand: F, spec: &ContourSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex + Sync,
{
    spec.validate(true)?;
    let half_width = spec.truncation;
    let mut intervals = (2.0 * half_width / spec.step).ceil().max(2.0) as usize;
    let mut h = 2.0 * half_width / intervals as f64;

    let grid: Vec<f64> = (0..=intervals)
        .map(|j| -half_width + j as f64 * h)
        .collect();
    let mut values = evaluate_nodes(&integrand, &grid)?;
    let last = values.len() - 1;
    values[0] *= 0.5;
    values[last] *= 0.5;
    let mut sum = pairwise_sum(&values);
    let mut mass: f64 = pairwise_sum_real(&values.iter().map(|v| v.norm()).collect::<Vec<_>>());
    let mut estimate = sum * h;

    let mut halvings = 0;
    loop {
        let next_nodes = 2 * intervals + 1;
        if next_nodes > spec.max_nodes {
            return Err(PmtError::NoConvergence {
                err_est: f64::INFINITY,
                tol: spec.tol,
                nodes: intervals + 1,
            });
        }
        let midpoints: Vec<f64> = (0..intervals)
            .map(|j| -half_width + (j as f64 + 0.5) * h)
            .collect();
        let fresh = evaluate_nodes(&integrand, &midpoints)?;
        sum += pairwise_sum(&fresh);
        mass += pairwise_sum_real(&fresh.iter().map(|v| v.norm()).collect::<Vec<_>>());
        intervals *= 2;
        h *= 0.5;
        halvings += 1;

        let refined = sum * h;
        let err_est = (refined - estimate).norm();
        estimate = refined;
        let abs_mass = mass * h;
        let floor = NOISE_FACTOR * f64::EPSILON * abs_mass;
        if halvings >= MIN_HALVINGS && err_est <= spec.tol.max(floor) {
            return Ok(QuadResult {
                value: refined,
                err_est,
                nodes: intervals + 1,
                sigma_used: spec.sigma,
                abs_mass,
            });
        }
        if 2 * intervals + 1 > spec.max_nodes {
            return Err(PmtError::NoConvergence {
                err_est,
                tol: spec.tol.max(floor),
                nodes: intervals + 1,
            });
        }
    }
}

/// Default spec for the vanishing-identity check: `T = 10⁴`.
pub fn vanishing_spec(sigma: f64) -> ContourSpec {
    ContourSpec::new(sigma)
        .with_truncation(1e4)
        .with_step(0.5)
        .with_tol(1e-9)
}

/// `|∫ e^{-itx} / w^{r+1} dt|` over `[-T, T]`; zero in exact arithmetic.
///
/// Restricted to `Re(r) ≥ 1`, where the `|t|^{-Re(r)-1}` tail beyond `T`
/// stays below the check tolerance.
pub fn vanishing_residual(x: f64, r: Complex, spec: &ContourSpec) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(PmtError::InvalidSpec(format!("x must be > 0, got {x}")));
    }
    if r.re < 1.0 {
        return Err(PmtError::InvalidOrder(r));
    }
    spec.validate(false)?;
    let sigma = spec.sigma;
    let exponent = -(r + 1.0);
    let res = integrate_line(
        |t| {
            let w = Complex::new(sigma, t);
            Complex::from_polar(1.0, -t * x) * cpow(w, exponent)
        },
        spec,
    )?;
    Ok(res.value.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn power_of_one_is_one() {
        let v = principal_power(c(1.0, 0.0), c(2.0, 3.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn power_of_i() {
        let v = principal_power(c(0.0, 1.0), c(0.0, 2.0)).unwrap();
        assert!((v.re - (-PI).exp()).abs() < 1e-16);
        assert!(v.im.abs() < 1e-16);
    }

    #[test]
    fn square_root_matches_polar_form() {
        let w = c(2.0, 1.0);
        let v = principal_power(w, c(0.5, 0.0)).unwrap();
        let (r, theta) = w.to_polar();
        let oracle = c(
            r.sqrt() * (theta / 2.0).cos(),
            r.sqrt() * (theta / 2.0).sin(),
        );
        assert!((v - oracle).norm() < 1e-15);
    }

    #[test]
    fn branch_cut_and_zero_base_rejected() {
        assert!(matches!(
            principal_power(c(-2.0, 0.0), c(0.5, 0.0)),
            Err(PmtError::BranchCut { .. })
        ));
        assert!(matches!(
            principal_power(c(0.0, 0.0), c(-1.0, 0.0)),
            Err(PmtError::ZeroBase { .. })
        ));
        assert_eq!(
            principal_power(c(0.0, 0.0), c(2.0, 1.0)).unwrap(),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn parabola_points() {
        assert_eq!(map_to_parabola(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(map_to_parabola(1.0, 1.0), c(0.0, 2.0));
        assert_eq!(map_to_parabola(0.5, 2.0), c(0.25 - 4.0, 2.0));
    }

    #[test]
    fn gaussian_integral() {
        let spec = ContourSpec::new(1.0).with_truncation(8.0).with_tol(1e-12);
        let res = integrate_line(|t| c((-t * t).exp(), 0.0), &spec).unwrap();
        assert!((res.value.re - PI.sqrt()).abs() < 1e-14);
        assert!(res.err_est < 1e-12);
        assert!(res.nodes <= spec.max_nodes);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let spec = ContourSpec::new(1.0).with_truncation(8.0);
        let res = integrate_line(|t| c(t * (-t * t).exp(), 0.0), &spec).unwrap();
        assert!(res.value.norm() < 1e-15);
    }

    #[test]
    fn gamma_half_integral_on_line() {
        let spec = ContourSpec::new(1.0);
        let res = integrate_line(
            |t| {
                let w = c(1.0, t);
                cpow(w, c(0.0, 0.0)) * (w * w).exp()
            },
            &spec,
        )
        .unwrap();
        assert!((res.value - c(PI.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let spec = ContourSpec::new(1.0);
        let err = integrate_line(
            |t| {
                if t > 1.0 {
                    c(f64::NAN, 0.0)
                } else {
                    c(1.0, 0.0)
                }
            },
            &spec,
        )
        .unwrap_err();
        assert!(matches!(err, PmtError::IntegrandFailure { .. }));
    }

    #[test]
    fn node_budget_exhaustion_is_no_convergence() {
        let spec = ContourSpec::new(1.0)
            .with_truncation(8.0)
            .with_tol(1e-300)
            .with_max_nodes(64);
        // Discontinuous integrand: trapezoid converges only linearly.
        let err = integrate_line(|t| c(if t > 0.1 { 1.0 } else { 0.0 }, 0.0), &spec).unwrap_err();
        assert!(matches!(err, PmtError::NoConvergence { .. }));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ContourSpec::new(-1.0).validate(false).is_err());
        assert!(ContourSpec::new(0.0).validate(false).is_err());
        assert!(ContourSpec::new(0.0).validate(true).is_ok());
        assert!(ContourSpec::new(1.0)
            .with_step(0.0)
            .validate(false)
            .is_err());
        assert!(ContourSpec::new(1.0)
            .with_max_nodes(8)
            .validate(false)
            .is_err());
        assert!(ContourSpec::new(1.0)
            .with_truncation(100.0)
            .with_step(0.01)
            .with_max_nodes(1000)
            .validate(false)
            .is_err());
    }

    #[test]
    fn vanishing_identity_examples() {
        let r1 = vanishing_residual(1.0, c(1.0, 0.0), &vanishing_spec(1.0)).unwrap();
        assert!(r1 < 1e-6, "{r1}");
        let r2 = vanishing_residual(5.0, c(2.0, 0.0), &vanishing_spec(1.0)).unwrap();
        assert!(r2 < 1e-8, "{r2}");
        let r3 = vanishing_residual(1.0, c(1.5, 0.5), &vanishing_spec(2.0)).unwrap();
        assert!(r3 < 1e-6, "{r3}");
    }

    #[test]
    fn vanishing_rejects_small_order() {
        assert!(matches!(
            vanishing_residual(1.0, c(0.5, 0.0), &vanishing_spec(1.0)),
            Err(PmtError::InvalidOrder(_))
        ));
    }

    #[test]
    fn truncation_grows_with_power() {
        let t0 = gaussian_truncation(1.0, 1.0, c(0.0, 0.0), 1e-10);
        let t1 = gaussian_truncation(1.0, 1.0, c(20.0, 0.0), 1e-10);
        let t2 = gaussian_truncation(1.0, 0.25, c(0.0, 0.0), 1e-10);
        assert!(t0 >= MIN_TRUNCATION);
        assert!(t1 > t0);
        assert!(t2 > t0);
    }
}
