//! Dictionary and operational-property verification.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::contour::{integrate_line, ContourSpec};
use crate::error::{PmtError, Result};
use crate::gamma::{big_g, GammaConfig};
use crate::series::{rpow, zeta_via_eta};
use crate::zeta::R_SIGMA_MAX;
use crate::{c64, Complex};

use super::registry::{lookup, registry, WeightEntry, TABLE_ROWS};
use super::{boundary_integral, pmt_boundary, pmt_eval, pmt_integral, AbelSchedule, Mode};

pub const ABSOLUTE_TOL: f64 = 1e-8;
pub const BOUNDARY_TOL: f64 = 1e-6;
pub const PROPERTY_TOL: f64 = 1e-6;
pub const CONVOLUTION_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for ComplexJson {
    fn from(v: Complex) -> Self {
        Self { re: v.re, im: v.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    /// Table row or property case.
    pub row: String,
    pub mode: String,
    pub z: ComplexJson,
    pub computed: ComplexJson,
    pub expected: ComplexJson,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ReportRow {
    fn new(
        name: &str,
        row: &str,
        mode: &str,
        z: Complex,
        computed: Complex,
        expected: Complex,
        tol: f64,
    ) -> Self {
        let abs_dev = (computed - expected).norm();
        let scale = expected.norm();
        let rel_dev = if scale > 0.0 {
            abs_dev / scale
        } else {
            abs_dev
        };
        Self {
            name: name.to_string(),
            row: row.to_string(),
            mode: mode.to_string(),
            z: z.into(),
            computed: computed.into(),
            expected: expected.into(),
            abs_dev,
            rel_dev,
            tol,
            pass: abs_dev.is_finite() && abs_dev <= tol * scale.max(1.0),
        }
    }
}

/// Outcome per table row: all of its entries and samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSummary {
    pub row: String,
    pub entries: Vec<String>,
    pub checks: usize,
    pub max_abs_dev: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
    /// One line per table row touched; empty for property reports.
    pub table: Vec<RowSummary>,
    pub pass: bool,
}

impl VerificationReport {
    fn from_rows(rows: Vec<ReportRow>, summarize: bool) -> Self {
        let mut table = Vec::new();
        if summarize {
            for label in TABLE_ROWS {
                let mine: Vec<&ReportRow> = rows.iter().filter(|r| r.row == label).collect();
                if mine.is_empty() {
                    continue;
                }
                let mut entries: Vec<String> = Vec::new();
                for r in &mine {
                    if !entries.contains(&r.name) {
                        entries.push(r.name.clone());
                    }
                }
                table.push(RowSummary {
                    row: label.to_string(),
                    entries,
                    checks: mine.len(),
                    max_abs_dev: mine.iter().map(|r| r.abs_dev).fold(0.0, f64::max),
                    pass: mine.iter().all(|r| r.pass),
                });
            }
        }
        let pass = !rows.is_empty() && rows.iter().all(|r| r.pass);
        Self { rows, table, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evaluates an entry in its own mode with its default contour or schedule.
pub fn evaluate_entry(entry: &WeightEntry, z: Complex) -> Result<Complex> {
    match entry.mode {
        Mode::Absolute => Ok(pmt_eval(entry, z, &ContourSpec::new(entry.default_sigma))?.value),
        Mode::BoundaryAbel => pmt_boundary(entry, z, &AbelSchedule::default()),
    }
}

/// Checks each named entry (all entries if `names` is empty) against its closed
/// form at `z_samples`, or at the entry's own samples when none are given.
pub fn dictionary_verify(
    names: &[&str],
    z_samples: Option<&[Complex]>,
    report_sink: Option<&mut dyn Write>,
) -> Result<VerificationReport> {
    let entries: Vec<WeightEntry> = if names.is_empty() {
        registry()
    } else {
        names.iter().map(|n| lookup(n)).collect::<Result<_>>()?
    };
    verify_entries(&entries, z_samples, report_sink)
}

pub fn verify_entries(
    entries: &[WeightEntry],
    z_samples: Option<&[Complex]>,
    report_sink: Option<&mut dyn Write>,
) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for entry in entries {
        let zs = z_samples.unwrap_or(&entry.samples);
        let tol = match entry.mode {
            Mode::Absolute => ABSOLUTE_TOL,
            Mode::BoundaryAbel => BOUNDARY_TOL,
        };
        for &z in zs {
            let expected = entry.expected(z)?;
            let computed = evaluate_entry(entry, z)?;
            rows.push(ReportRow::new(
                entry.name,
                entry.row,
                entry.mode.label(),
                z,
                computed,
                expected,
                tol,
            ));
        }
    }
    let report = VerificationReport::from_rows(rows, true);
    if let Some(sink) = report_sink {
        writeln!(sink, "{}", report.to_json()).map_err(|e| PmtError::InvalidSpec(e.to_string()))?;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Linearity,
    Scaling,
    MonomialShift,
    Differentiation,
    DirichletComposition,
    MellinLink,
    Convolution,
    Inversion,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Linearity,
        Property::Scaling,
        Property::MonomialShift,
        Property::Differentiation,
        Property::DirichletComposition,
        Property::MellinLink,
        Property::Convolution,
        Property::Inversion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Linearity => "linearity",
            Property::Scaling => "scaling",
            Property::MonomialShift => "monomial_shift",
            Property::Differentiation => "differentiation",
            Property::DirichletComposition => "dirichlet_composition",
            Property::MellinLink => "mellin_link",
            Property::Convolution => "convolution",
            Property::Inversion => "inversion",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let key = name.replace('-', "_");
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.name() == key)
            .ok_or_else(|| PmtError::InvalidSpec(format!("unknown property '{name}'")))
    }

    /// Nested-quadrature checks kept out of the default test profile.
    pub fn is_slow(self) -> bool {
        self == Property::Convolution
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyParams {
    /// Overrides the per-property default sample points.
    pub z_samples: Option<Vec<Complex>>,
    pub alphas: Vec<f64>,
    pub ks: Vec<u32>,
    pub fd_step: f64,
    /// Point `u < 0` at which the inversion integral is evaluated.
    pub inversion_u: f64,
    /// Overrides the property's tolerance.
    pub tol: Option<f64>,
}

impl Default for PropertyParams {
    fn default() -> Self {
        Self {
            z_samples: None,
            alphas: vec![0.5, 2.0, 3.0],
            ks: vec![1, 2],
            fd_step: 1e-4,
            inversion_u: -1.0,
            tol: None,
        }
    }
}

impl PropertyParams {
    fn samples(&self, default: &[Complex]) -> Vec<Complex> {
        self.z_samples.clone().unwrap_or_else(|| default.to_vec())
    }
}

fn gaussian(u: Complex) -> Complex {
    u.exp()
}

fn geometric(u: Complex) -> Complex {
    let e = u.exp();
    e / (1.0 - e)
}

/// Runs one property check and returns the full report, passing or not.
pub fn property_report(
    property: Property,
    params: &PropertyParams,
    cfg: &ContourSpec,
) -> Result<VerificationReport> {
    cfg.validate(false)?;
    let name = property.name();
    let tol = params.tol.unwrap_or(match property {
        Property::Linearity | Property::DirichletComposition => ABSOLUTE_TOL,
        Property::Convolution => CONVOLUTION_TOL,
        _ => PROPERTY_TOL,
    });
    let row = |case: String, z: Complex, lhs: Complex, rhs: Complex| {
        ReportRow::new(name, &case, "property", z, lhs, rhs, tol)
    };
    let gcfg = GammaConfig {
        contour: *cfg,
        ..GammaConfig::default()
    };
    let mut rows = Vec::new();
    match property {
        Property::Linearity => {
            for z in params.samples(&[c64(0.0, 0.0), c64(0.6, 0.3), c64(-0.8, 1.1)]) {
                let combo = pmt_integral(|u| 2.0 * u.exp() + 3.0 * u * u.exp(), z, cfg, 1.0, 2.0)?;
                let f1 = pmt_integral(gaussian, z, cfg, 1.0, 0.0)?;
                let f2 = pmt_integral(|u| u * u.exp(), z, cfg, 1.0, 2.0)?;
                rows.push(row(
                    "2f1+3f2".into(),
                    z,
                    combo.value,
                    2.0 * f1.value + 3.0 * f2.value,
                ));
            }
        }
        Property::Scaling => {
            for &alpha in &params.alphas {
                if !(alpha > 0.0) {
                    return Err(PmtError::InvalidScale(alpha));
                }
                for z in params.samples(&[c64(0.0, 0.0), c64(0.5, 0.5), c64(-0.7, -0.9)]) {
                    let lhs = pmt_integral(|u| (alpha * u).exp(), z, cfg, alpha, 0.0)?;
                    let base = pmt_integral(gaussian, z, cfg, 1.0, 0.0)?;
                    let rhs = rpow(alpha, -(z + 0.5)) * base.value;
                    rows.push(row(format!("alpha={alpha}"), z, lhs.value, rhs));
                }
            }
        }
        Property::MonomialShift => {
            for &k in &params.ks {
                for z in params.samples(&[c64(0.0, 0.0), c64(0.4, -0.6), c64(-1.5, 0.5)]) {
                    let lhs =
                        pmt_integral(|u| u.powi(k as i32) * u.exp(), z, cfg, 1.0, 2.0 * k as f64)?;
                    let rhs = big_g(z + k as f64, &gcfg)?;
                    rows.push(row(format!("k={k}"), z, lhs.value, rhs.value));
                }
            }
        }
        Property::Differentiation => {
            let h = params.fd_step;
            let fine = cfg.with_tol(cfg.tol.min(1e-13));
            let gfine = GammaConfig {
                contour: fine,
                ..gcfg
            };
            for z in params.samples(&[c64(0.0, 0.0), c64(1.0, 0.5), c64(-0.6, 0.2)]) {
                let lhs = pmt_integral(|u| u.exp() * u.ln(), z, &fine, 1.0, 1.0)?;
                let up = big_g(z + h, &gfine)?.value;
                let down = big_g(z - h, &gfine)?.value;
                rows.push(row(format!("h={h}"), z, lhs.value, (up - down) / (2.0 * h)));
            }
        }
        Property::DirichletComposition => {
            if cfg.sigma >= R_SIGMA_MAX {
                return Err(PmtError::SigmaOutOfWindow {
                    sigma: cfg.sigma,
                    lo: 0.0,
                    hi: R_SIGMA_MAX,
                });
            }
            for z in params.samples(&[c64(1.0, 0.0), c64(0.8, 0.5), c64(2.2, -1.0)]) {
                let s = z + 0.5;
                if s.re <= 1.0 {
                    return Err(PmtError::InvalidSpec(format!(
                        "Dirichlet composition is checked only for Re(s) > 1, got s = {s}"
                    )));
                }
                let lhs = pmt_integral(geometric, z, cfg, 1.0, 0.0)?;
                let g = big_g(z, &gcfg)?.value;
                rows.push(row("zeta".into(), z, lhs.value, g * zeta_via_eta(s)?));
            }
        }
        Property::MellinLink => {
            let cases: [(
                &str,
                fn(Complex) -> Complex,
                fn(f64) -> f64,
                f64,
                Vec<Complex>,
            ); 2] = [
                (
                    "gaussian",
                    gaussian,
                    |x| (-x).exp(),
                    0.0,
                    vec![c64(0.0, 0.0), c64(0.7, 0.4)],
                ),
                (
                    "geometric",
                    geometric,
                    |x| 1.0 / x.exp_m1(),
                    1.0,
                    vec![c64(1.0, 0.0), c64(1.3, 0.5)],
                ),
            ];
            for (case, weight, negated, order, default_z) in cases {
                for z in params.samples(&default_z) {
                    let s = z + 0.5;
                    if s.re <= order {
                        return Err(PmtError::InvalidSpec(format!(
                            "Mellin transform of the {case} weight needs Re(s) > {order}"
                        )));
                    }
                    let lhs = pmt_integral(weight, z, cfg, 1.0, 0.0)?;
                    let m = mellin_numeric(negated, s, order, 1e-12)?;
                    rows.push(row(case.into(), z, lhs.value, (PI * z).cos() * m));
                }
            }
        }
        Property::Convolution => {
            for z in params.samples(&[c64(0.0, 0.0), c64(0.3, 0.0)]) {
                let lhs = boundary_integral(
                    |x| Complex::new(exp_convolution(x), 0.0),
                    z,
                    0.0,
                    1e-9,
                    Some(40.0),
                )?;
                let g = big_g(z, &gcfg)?.value;
                rows.push(row("e^u*e^u".into(), z, lhs.value, g * g / (PI * z).cos()));
            }
        }
        Property::Inversion => {
            let u = params.inversion_u;
            if !(u < 0.0) {
                return Err(PmtError::InvalidSpec(format!(
                    "inversion needs u < 0, got {u}"
                )));
            }
            let v = inversion_integral(u, &gcfg)?;
            rows.push(row(
                format!("u={u}"),
                Complex::new(0.0, 0.0),
                v,
                Complex::new(u.exp(), 0.0),
            ));
        }
    }
    Ok(VerificationReport::from_rows(rows, false))
}

/// As [`property_report`], but a failing comparison is an error carrying the report.
pub fn property_verify(
    property: Property,
    params: &PropertyParams,
    cfg: &ContourSpec,
) -> Result<VerificationReport> {
    let report = property_report(property, params, cfg)?;
    if report.pass {
        Ok(report)
    } else {
        let detail =
            serde_json::to_string(&report.failures().collect::<Vec<_>>()).expect("rows serialize");
        Err(PmtError::PropertyViolation {
            property: property.name().to_string(),
            detail,
        })
    }
}

/// `∫_0^∞ x^{s−1} g(x) dx` via `x = e^y`; `g(x) = O(x^{−order})` as `x → 0`.
fn mellin_numeric(g: fn(f64) -> f64, s: Complex, order: f64, tol: f64) -> Result<Complex> {
    let y_lo = ((tol * 1e-4).ln() - 4.0) / (s.re - order);
    let y_hi = 5.0;
    let center = 0.5 * (y_lo + y_hi);
    let spec = ContourSpec::boundary()
        .with_truncation(0.5 * (y_hi - y_lo))
        .with_step(0.25)
        .with_tol(tol);
    Ok(integrate_line(
        |tau| {
            let y = center + tau;
            (s * y).exp() * g(y.exp())
        },
        &spec,
    )?
    .value)
}

/// `(f⋆f)(−x) = ∫_0^∞ e^{−y} e^{−x/y} dy/y` for `f(u) = e^u`, by quadrature in `log y`.
fn exp_convolution(x: f64) -> f64 {
    let v_lo = (x / 60.0).ln().min(-1.0);
    let v_hi = 4.5f64.max(v_lo + 1.0);
    let center = 0.5 * (v_lo + v_hi);
    let spec = ContourSpec::boundary()
        .with_truncation(0.5 * (v_hi - v_lo))
        .with_step(0.25)
        .with_tol(1e-11);
    integrate_line(
        |tau| {
            let v = center + tau;
            Complex::new((-v.exp() - x * (-v).exp()).exp(), 0.0)
        },
        &spec,
    )
    .map(|r| r.value.re)
    .unwrap_or(f64::NAN)
}

/// `(1/2π) ∫ G(iτ) sec(iπτ) (−u)^{−(iτ+1/2)} dτ` with `G` computed by quadrature.
fn inversion_integral(u: f64, gcfg: &GammaConfig) -> Result<Complex> {
    let spec = ContourSpec::boundary()
        .with_truncation(30.0)
        .with_step(0.25)
        .with_tol(1e-10);
    let x = -u;
    let res = integrate_line(
        |tau| {
            let z = Complex::new(0.0, tau);
            match big_g(z, gcfg) {
                Ok(g) => g.value / (PI * tau).cosh() * rpow(x, -(z + 0.5)),
                Err(_) => Complex::new(f64::NAN, f64::NAN),
            }
        },
        &spec,
    )?;
    Ok(res.value / (2.0 * PI))
}
