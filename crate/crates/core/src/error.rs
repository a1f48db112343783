use thiserror::Error;

use crate::Complex;

pub type Result<T> = std::result::Result<T, PmtError>;

/// Every failure the numeric layer can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PmtError {
    #[error("base {w} lies on the branch cut (-inf, 0]")]
    BranchCut { w: Complex },
    #[error("zero base with exponent {e} (Re(e) <= 0)")]
    ZeroBase { e: Complex },
    #[error("non-finite value produced: {what}")]
    NonFinite { what: String },
    #[error("invalid contour spec: {0}")]
    InvalidSpec(String),
    #[error("quadrature did not converge: err_est {err_est:e} > tol {tol:e} after {nodes} nodes")]
    NoConvergence {
        err_est: f64,
        tol: f64,
        nodes: usize,
    },
    #[error("integrand returned a non-finite value at t = {t}")]
    IntegrandFailure { t: f64 },
    #[error("scale parameter must be positive, got {0}")]
    InvalidScale(f64),
    #[error("argument {s} is within the guard band of a pole")]
    NearPole { s: Complex },
    #[error("argument {0} is a pole of Gamma")]
    Pole(Complex),
    #[error("denominator integral {value:e} is too small relative to its mass {mass:e}")]
    DenominatorUnderflow { value: f64, mass: f64 },
    #[error("imaginary residue {im:e} exceeds tolerance {tol:e}")]
    ImaginaryResidue { im: f64, tol: f64 },
    #[error("sigma = {sigma} outside the admissible window ({lo}, {hi})")]
    SigmaOutOfWindow { sigma: f64, lo: f64, hi: f64 },
    #[error("s = {s} is within 1e-3 of the positive integer {n}")]
    NearPositiveInteger { s: Complex, n: u64 },
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("1 - 2^(1-s) vanishes at s = {s}")]
    EtaZetaConversionSingularity { s: Complex },
    #[error("|tau| = {tau} exceeds tau_max = {tau_max}")]
    TauOutOfRange { tau: f64, tau_max: f64 },
    #[error("unknown dictionary entry {0:?}")]
    UnknownEntry(String),
    #[error("entry {name:?} cannot be evaluated in {mode} mode")]
    WrongMode { name: String, mode: &'static str },
    #[error("no closed form available for {name:?} at z = {z}")]
    NoClosedForm { name: String, z: Complex },
    #[error("Abel extrapolation diverged: {0}")]
    ExtrapolationDivergence(String),
    #[error("property {property} violated: {detail}")]
    PropertyViolation { property: String, detail: String },
    #[error("sigma = {sigma} must lie in (0, {sigma_max})")]
    SigmaExceedsDomain { sigma: f64, sigma_max: f64 },
    #[error("moment order must satisfy Re(r) > 0, got {0}")]
    InvalidOrder(Complex),
    #[error("argument x must be nonzero")]
    ZeroArgument,
    #[error("distribution {0:?} has no sampler")]
    NoSampler(String),
    #[error("invalid scan configuration: {0}")]
    InvalidScan(String),
}

impl PmtError {
    /// True for errors caused by the numerics rather than by the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            PmtError::NoConvergence { .. }
                | PmtError::IntegrandFailure { .. }
                | PmtError::NonFinite { .. }
                | PmtError::DenominatorUnderflow { .. }
                | PmtError::ImaginaryResidue { .. }
                | PmtError::ExtrapolationDivergence(_)
                | PmtError::PoleAtOne
                | PmtError::Pole(_)
                | PmtError::NearPole { .. }
                | PmtError::EtaZetaConversionSingularity { .. }
                | PmtError::NoClosedForm { .. }
        )
    }
}
