//! Parabolic Mellin Transform toolkit.
//!
//! Integrals along the vertical line `w = σ + it`, whose square traces a
//! left-opening parabola around the origin, give globally convergent
//! representations of Γ, 1/Γ, ψ, the Riemann, Hurwitz and Dirichlet zeta
//! functions, and complex fractional moments of random variables.
//!
//! Module map:
//! - [`contour`]: principal powers and the trapezoid engine.
//! - [`gamma`]: `G(z)` and the Gamma family derived from it.
//! - [`zeta`]: `R(z,a)`, `D(z,a)` and the zeta family, plus oracles.
//! - [`pmt`]: the generic transform, the dictionary registry and verifiers.
//! - [`rh`]: the symmetrized function `S(z)`, `𝒳(τ)` and a zero scanner.
//! - [`moments`]: absolute moments from moment-generating functions.
//! - [`classical`], [`series`]: independent reference implementations.

pub mod classical;
pub mod contour;
pub mod error;
pub mod gamma;
pub mod moments;
pub mod pmt;
pub mod rh;
pub mod series;
pub mod zeta;

pub use num_complex;

/// The universal numeric carrier.
pub type Complex = num_complex::Complex64;

pub use contour::{ContourSpec, QuadResult};
pub use error::{PmtError, Result};

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}
