//! Dictionary weights with their closed-form transforms (`s = z + 1/2`).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classical;
use crate::error::{PmtError, Result};
use crate::gamma::big_g_closed;
use crate::series;
use crate::zeta::{D_SIGMA_MAX, R_SIGMA_MAX};
use crate::{c64, Complex};

use super::Mode;

/// Row labels of the dictionary, in table order.
pub const TABLE_ROWS: [&str; 14] = [
    "Identity Kernel",
    "Gamma Function",
    "Scaled Gaussian",
    "Parabolic Cylinder",
    "Incomplete Gamma",
    "Shift / Recurrence",
    "Digamma Function",
    "Riemann Zeta",
    "Dirichlet Eta",
    "Hurwitz Zeta",
    "Dirichlet L-function",
    "Fresnel Sine Integral",
    "Fresnel Cosine Integral",
    "Polylogarithms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    Rational,
    Gaussian,
    ScaledGaussian,
    PerturbedExp,
    IncompleteGamma,
    Monomial,
    LogGaussian,
    Geometric,
    Alternating,
    Hurwitz,
    DirichletL,
    Sine,
    Cosine,
    Polylog,
    PolylogAlt,
    PolylogShift,
}

impl WeightKind {
    pub const ALL: [WeightKind; 16] = [
        WeightKind::Rational,
        WeightKind::Gaussian,
        WeightKind::ScaledGaussian,
        WeightKind::PerturbedExp,
        WeightKind::IncompleteGamma,
        WeightKind::Monomial,
        WeightKind::LogGaussian,
        WeightKind::Geometric,
        WeightKind::Alternating,
        WeightKind::Hurwitz,
        WeightKind::DirichletL,
        WeightKind::Sine,
        WeightKind::Cosine,
        WeightKind::Polylog,
        WeightKind::PolylogAlt,
        WeightKind::PolylogShift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Rational => "rational",
            WeightKind::Gaussian => "gaussian",
            WeightKind::ScaledGaussian => "scaled-gaussian",
            WeightKind::PerturbedExp => "perturbed-exp",
            WeightKind::IncompleteGamma => "incomplete-gamma",
            WeightKind::Monomial => "monomial",
            WeightKind::LogGaussian => "log-gaussian",
            WeightKind::Geometric => "geometric",
            WeightKind::Alternating => "alternating",
            WeightKind::Hurwitz => "hurwitz",
            WeightKind::DirichletL => "dirichlet-l",
            WeightKind::Sine => "sine",
            WeightKind::Cosine => "cosine",
            WeightKind::Polylog => "polylog",
            WeightKind::PolylogAlt => "polylog-alt",
            WeightKind::PolylogShift => "polylog-shift",
        }
    }

    pub fn row(self) -> &'static str {
        let i = match self {
            WeightKind::Rational => 0,
            WeightKind::Gaussian => 1,
            WeightKind::ScaledGaussian => 2,
            WeightKind::PerturbedExp => 3,
            WeightKind::IncompleteGamma => 4,
            WeightKind::Monomial => 5,
            WeightKind::LogGaussian => 6,
            WeightKind::Geometric => 7,
            WeightKind::Alternating => 8,
            WeightKind::Hurwitz => 9,
            WeightKind::DirichletL => 10,
            WeightKind::Sine => 11,
            WeightKind::Cosine => 12,
            WeightKind::Polylog | WeightKind::PolylogAlt | WeightKind::PolylogShift => 13,
        };
        TABLE_ROWS[i]
    }
}

/// Weight parameters; each kind reads only the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// Scale of the scaled Gaussian `e^{αu}`.
    pub alpha: f64,
    /// λ for the perturbed exponential and the incomplete Gamma.
    pub lambda: f64,
    /// ν for the incomplete Gamma.
    pub nu: f64,
    /// Monomial power, polylog order, or L-function shift.
    pub k: u32,
    /// Hurwitz shift.
    pub a: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            lambda: 1.0,
            nu: 2.0,
            k: 1,
            a: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightEntry {
    pub name: &'static str,
    pub row: &'static str,
    pub kind: WeightKind,
    pub mode: Mode,
    /// Open interval of admissible σ; `(0, 0)` for boundary entries.
    pub sigma_window: (f64, f64),
    pub default_sigma: f64,
    pub params: Params,
    /// Default verification points.
    pub samples: Vec<Complex>,
}

impl WeightEntry {
    pub fn new(kind: WeightKind) -> Self {
        use WeightKind::*;
        let inf = f64::INFINITY;
        let boundary = matches!(
            kind,
            IncompleteGamma | DirichletL | Sine | Cosine | Polylog | PolylogAlt | PolylogShift
        );
        let (window, sigma) = match kind {
            _ if boundary => ((0.0, 0.0), 0.0),
            Rational => ((0.0, 1.0), 0.5),
            Geometric | Hurwitz => ((0.0, R_SIGMA_MAX), 1.7),
            Alternating => ((0.0, D_SIGMA_MAX), 1.2),
            _ => ((0.0, inf), 1.0),
        };
        let mut params = Params::default();
        if kind == PolylogShift {
            params.k = 2;
        }
        if kind == DirichletL {
            params.k = 0;
        }
        let samples = match kind {
            Rational => vec![c64(1.0, 2.0), c64(0.0, 0.0), c64(-0.3, 0.5)],
            Gaussian | ScaledGaussian => vec![c64(0.0, 0.0), c64(1.0, 0.5), c64(-1.3, 0.8)],
            PerturbedExp => vec![c64(0.0, 0.0), c64(0.5, 0.0), c64(1.0, 0.0)],
            Monomial => vec![c64(0.0, 0.0), c64(0.7, -0.4), c64(-1.2, 1.0)],
            LogGaussian => vec![c64(0.0, 0.0), c64(1.0, 0.5), c64(-0.7, 0.3)],
            Geometric | Alternating => vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(-0.3, 2.0)],
            Hurwitz => vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.2, 1.5)],
            IncompleteGamma => vec![c64(0.0, 0.0), c64(0.5, 0.5), c64(1.0, 0.0)],
            DirichletL => vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.5, 1.0)],
            Sine | Cosine => vec![c64(0.0, 0.0), c64(0.5, 0.0), c64(0.3, 0.7)],
            Polylog => vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.5, 1.0)],
            PolylogAlt => vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.3, -0.6)],
            PolylogShift => vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.5, 0.5)],
        };
        Self {
            name: kind.name(),
            row: kind.row(),
            kind,
            mode: if boundary {
                Mode::BoundaryAbel
            } else {
                Mode::Absolute
            },
            sigma_window: window,
            default_sigma: sigma,
            params,
            samples,
        }
    }

    /// Overrides one parameter by name (`alpha`, `lambda`, `nu`, `k`, `a`).
    pub fn with_param(mut self, key: &str, value: f64) -> Result<Self> {
        let bad = |why: &str| Err(PmtError::InvalidSpec(format!("{key}={value}: {why}")));
        match key {
            "alpha" if value > 0.0 => self.params.alpha = value,
            "alpha" => return Err(PmtError::InvalidScale(value)),
            "lambda" if value > 0.0 => self.params.lambda = value,
            "nu" if value > 0.0 => self.params.nu = value,
            "a" if value > 0.0 && value <= 1.0 => self.params.a = value,
            "k" if value >= 0.0 && value.fract() == 0.0 && value <= 64.0 => {
                let k = value as u32;
                let needs_positive = matches!(
                    self.kind,
                    WeightKind::Polylog | WeightKind::PolylogAlt | WeightKind::PolylogShift
                );
                if needs_positive && k == 0 {
                    return bad("polylog order must be >= 1");
                }
                if self.kind == WeightKind::DirichletL && k != 0 {
                    return bad("the L-function weight is only available for k = 0");
                }
                self.params.k = k;
            }
            "lambda" | "nu" | "a" | "k" => return bad("out of range"),
            _ => return bad("unknown parameter"),
        }
        Ok(self)
    }

    pub fn check_sigma(&self, sigma: f64) -> Result<()> {
        let (lo, hi) = self.sigma_window;
        if self.mode == Mode::Absolute && !(sigma > lo && sigma < hi) {
            return Err(PmtError::SigmaOutOfWindow { sigma, lo, hi });
        }
        Ok(())
    }

    /// Gaussian decay rate along the parabola and extra polynomial growth in `|w|`.
    pub(crate) fn envelope(&self) -> (f64, f64) {
        use WeightKind::*;
        match self.kind {
            ScaledGaussian => (self.params.alpha, 0.0),
            PerturbedExp => (0.5, 1.0),
            Monomial => (1.0, 2.0 * self.params.k as f64),
            LogGaussian => (1.0, 1.0),
            Hurwitz => (self.params.a.min(1.0), 0.0),
            _ => (1.0, 0.0),
        }
    }

    /// `f(u)`.
    pub fn weight(&self, u: Complex) -> Complex {
        use WeightKind::*;
        let one = Complex::new(1.0, 0.0);
        let p = &self.params;
        match self.kind {
            Rational => one / (one - u),
            Gaussian => u.exp(),
            ScaledGaussian => (p.alpha * u).exp(),
            PerturbedExp => (0.5 * u - p.lambda * u.sqrt()).exp(),
            IncompleteGamma => classical::incomplete_gamma_upper(p.nu, -p.lambda * u)
                .unwrap_or(Complex::new(f64::NAN, f64::NAN)),
            Monomial => u.powi(p.k as i32) * u.exp(),
            LogGaussian => u.exp() * u.ln(),
            Geometric => {
                let e = u.exp();
                e / (one - e)
            }
            Alternating => {
                let e = u.exp();
                e / (one + e)
            }
            Hurwitz => (p.a * u).exp() / (one - u.exp()),
            DirichletL => {
                let v = if u.re >= 0.0 { -u } else { u };
                let e = v.exp();
                e / (one + e * e)
            }
            Sine => u.sin(),
            Cosine => u.cos(),
            Polylog => classical::polylog_exp(p.k, u),
            PolylogAlt => classical::polylog_neg_exp(p.k, u),
            PolylogShift => (Complex::i() * u).exp() * classical::polylog_exp(p.k, u),
        }
    }

    /// Closed-form transform at `z`.
    pub fn expected(&self, z: Complex) -> Result<Complex> {
        use WeightKind::*;
        let s = z + 0.5;
        let g = big_g_closed(z);
        let p = &self.params;
        let k = p.k as f64;
        Ok(match self.kind {
            Rational => Complex::new(PI, 0.0),
            Gaussian => g,
            ScaledGaussian => series::rpow(p.alpha, -s) * g,
            PerturbedExp => {
                let n2 = 2.0 * z;
                if n2.im != 0.0 || n2.re < 0.0 || (n2.re - n2.re.round()).abs() > 1e-12 {
                    return Err(PmtError::NoClosedForm {
                        name: self.name.to_string(),
                        z,
                    });
                }
                let lam = p.lambda;
                let v = (2.0 * PI).sqrt()
                    * (-lam * lam / 4.0).exp()
                    * classical::parabolic_cylinder_int(n2.re.round() as u32, lam);
                Complex::new(v, 0.0)
            }
            IncompleteGamma => {
                (PI * s).sin() / s
                    * series::rpow(p.lambda, -s)
                    * classical::gamma_reference(s + p.nu)?
            }
            Monomial => big_g_closed(z + k),
            LogGaussian => g * classical::digamma_series(0.5 - z)?,
            Geometric => g * series::zeta_via_eta(s)?,
            Alternating => g * series::eta_borwein(s),
            Hurwitz => g * series::hurwitz_euler_maclaurin(s, p.a)?,
            DirichletL => g * series::beta_borwein(s + k),
            Sine => -g * (PI * s / 2.0).sin(),
            Cosine => g * (PI * s / 2.0).cos(),
            Polylog => g * series::zeta_via_eta(s + k)?,
            PolylogAlt => -g * series::eta_borwein(s + k),
            PolylogShift => g * series::complex_shift_dirichlet(p.k, s)?,
        })
    }
}

/// All dictionary entries with default parameters, in table order.
pub fn registry() -> Vec<WeightEntry> {
    WeightKind::ALL
        .iter()
        .map(|k| WeightEntry::new(*k))
        .collect()
}

pub fn lookup(name: &str) -> Result<WeightEntry> {
    WeightKind::ALL
        .iter()
        .find(|k| k.name() == name)
        .map(|k| WeightEntry::new(*k))
        .ok_or_else(|| PmtError::UnknownEntry(name.to_string()))
}
