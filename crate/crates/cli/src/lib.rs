//! The `pmt` command line: every evaluation, verification and scan in
//! `pmt-core`, answered with one JSON envelope on stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use pmt_core::classical::gamma_reference;
use pmt_core::contour::{vanishing_residual, vanishing_spec};
use pmt_core::gamma::{
    digamma_result, euler_gamma, euler_gamma_result, gamma_result, reciprocal_gamma_result,
    GammaConfig,
};
use pmt_core::moments::{self, absolute_moment, MomentConfig};
use pmt_core::pmt::{
    dictionary_verify, lookup, pmt_boundary_detailed, pmt_eval, property_report, AbelSchedule,
    Mode, Property, PropertyParams, VerificationReport,
};
use pmt_core::rh::{lindelof_table, scan_zeros, ScanConfig};
use pmt_core::series::hurwitz_euler_maclaurin;
use pmt_core::zeta::{eta_result, hurwitz_zeta_result, jensen_result, ZetaConfig};
use pmt_core::{Complex, ContourSpec, PmtError, QuadResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Residual below which `check vanishing` passes.
pub const VANISHING_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "pmt", version, about = "Parabolic Mellin transform toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a special function.
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Dictionary transforms and their verification.
    #[command(subcommand)]
    Pmt(PmtCmd),
    #[command(subcommand)]
    Scan(ScanCmd),
    /// `|R(iτ)|` growth table on `[0, TO]`.
    Lindelof {
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Args, Debug)]
struct FnArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum EvalCmd {
    Gamma(FnArgs),
    Rgamma(FnArgs),
    Digamma(FnArgs),
    Zeta(FnArgs),
    Eta(FnArgs),
    Hurwitz {
        #[command(flatten)]
        f: FnArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
    /// `E|X|^r` for a catalog distribution.
    Moment {
        #[arg(long)]
        dist: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        r: Complex,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    EulerGamma {
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum PmtCmd {
    Eval {
        #[arg(long)]
        entry: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex,
        /// Weight parameter override, `KEY=VALUE`; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    VerifyTable {
        /// Comma-separated entry names; all entries when omitted.
        #[arg(long, value_delimiter = ',')]
        entries: Vec<String>,
        /// Also run every operational property, convolution included.
        #[arg(long)]
        extended: bool,
    },
    VerifyProps {
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ScanCmd {
    /// Sign changes of 𝒳 on `[FROM, TO]`.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Residual of `∫ e^{−itx} w^{−r−1} dt`, which vanishes for `x > 0`.
    Vanishing {
        #[arg(long)]
        x: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        r: Complex,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Parses `RE`, `RE+IMi`, `RE-IMi`, `IMi`.
pub fn parse_complex(text: &str) -> Result<Complex, String> {
    let bad = || format!("invalid complex literal {text:?}; expected RE, RE+IMi or RE-IMi");
    let t = text.trim();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return match t.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // The split is the last sign that is not the leading one or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

fn parse_param(text: &str) -> Result<(String, f64), String> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got {text:?}"))?;
    let v = v.parse::<f64>().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

/// Tolerance precedence: `--tol`, then `PM_TOL`, then the library default.
fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("PM_TOL") {
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("PM_TOL={v:?} is not a number"))),
        Err(_) => Ok(default),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexOut {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for ComplexOut {
    fn from(z: Complex) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// The single JSON document every command prints.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: Value,
    pub value: Value,
    pub err_est: Option<f64>,
    pub sigma_used: Option<f64>,
    pub nodes: Option<usize>,
    pub runtime_ms: u64,
    pub fallback_used: Option<String>,
    /// Every setting the result depends on, defaults included.
    pub settings: Value,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(PmtError),
    Io(String),
}

impl From<PmtError> for CliError {
    fn from(e: PmtError) -> Self {
        match e {
            e if e.is_numerical() => CliError::Numeric(e),
            PmtError::UnknownEntry(_)
            | PmtError::InvalidSpec(_)
            | PmtError::SigmaOutOfWindow { .. }
            | PmtError::SigmaExceedsDomain { .. }
            | PmtError::InvalidOrder(_)
            | PmtError::InvalidScale(_)
            | PmtError::InvalidScan(_)
            | PmtError::TauOutOfRange { .. }
            | PmtError::WrongMode { .. }
            | PmtError::ZeroArgument
            | PmtError::NoSampler(_) => CliError::Usage(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage".to_string(), m.clone()),
            CliError::Io(m) => ("io".to_string(), m.clone()),
            CliError::Numeric(e) => {
                let dbg = format!("{e:?}");
                let kind = dbg
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or("")
                    .to_string();
                (kind, e.to_string())
            }
        };
        json!({ "error": { "kind": kind, "message": message, "exit_code": self.code() } })
    }
}

struct Outcome {
    envelope: OutputEnvelope,
    passed: bool,
}

struct Eval {
    value: Value,
    err_est: Option<f64>,
    sigma_used: Option<f64>,
    nodes: Option<usize>,
    fallback: Option<&'static str>,
}

impl Eval {
    fn quad(q: QuadResult) -> Self {
        Self {
            value: json!(ComplexOut::from(q.value)),
            err_est: Some(q.err_est),
            sigma_used: Some(q.sigma_used),
            nodes: Some(q.nodes),
            fallback: None,
        }
    }

    fn fallback(q: QuadResult, name: &'static str) -> Self {
        Self {
            fallback: Some(name),
            ..Self::quad(q)
        }
    }
}

/// Runs the CLI on `argv` (program name first) with the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let payload = CliError::Usage(e.to_string()).to_json();
            let _ = writeln!(err, "{payload}");
            return EXIT_USAGE;
        }
    };
    let started = Instant::now();
    match dispatch(cli.command, started) {
        Ok(outcome) => match serde_json::to_string_pretty(&outcome.envelope) {
            Ok(doc) => {
                let _ = writeln!(out, "{doc}");
                if outcome.passed {
                    EXIT_OK
                } else {
                    EXIT_VERIFICATION
                }
            }
            Err(e) => {
                let e = CliError::Io(e.to_string());
                let _ = writeln!(err, "{}", e.to_json());
                e.code()
            }
        },
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.code()
        }
    }
}

fn envelope(
    command: &str,
    inputs: Value,
    settings: Value,
    eval: Eval,
    started: Instant,
) -> OutputEnvelope {
    OutputEnvelope {
        command: command.to_string(),
        inputs,
        value: eval.value,
        err_est: eval.err_est,
        sigma_used: eval.sigma_used,
        nodes: eval.nodes,
        runtime_ms: started.elapsed().as_millis() as u64,
        fallback_used: eval.fallback.map(str::to_string),
        settings,
    }
}

fn ok(envelope: OutputEnvelope) -> Result<Outcome, CliError> {
    Ok(Outcome {
        envelope,
        passed: true,
    })
}

fn dispatch(command: Command, started: Instant) -> Result<Outcome, CliError> {
    match command {
        Command::Eval(cmd) => eval_cmd(cmd, started),
        Command::Pmt(cmd) => pmt_cmd(cmd, started),
        Command::Scan(ScanCmd::Zeros {
            from,
            to,
            step,
            csv,
        }) => {
            let cfg = ScanConfig::new(from, to).with_step(step);
            let roots = scan_zeros(&cfg)?;
            if let Some(path) = &csv {
                write_csv(path, &roots)?;
            }
            let inputs = json!({ "from": from, "to": to, "step": step, "csv": csv });
            let eval = Eval {
                value: json!(roots),
                err_est: Some(cfg.refine_tol),
                sigma_used: Some(cfg.sigma),
                nodes: None,
                fallback: None,
            };
            ok(envelope("scan zeros", inputs, json!(cfg), eval, started))
        }
        Command::Lindelof { to, step, csv } => {
            if !(step > 0.0) || !(to >= 0.0) {
                return Err(CliError::Usage(
                    "lindelof needs --to >= 0 and --step > 0".into(),
                ));
            }
            let n = (to / step).round() as usize;
            let mut grid: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(to)).collect();
            if grid.last().is_some_and(|&t| t < to) {
                grid.push(to);
            }
            let cfg = ZetaConfig::r();
            let rows = lindelof_table(&grid, &cfg)?;
            if let Some(path) = &csv {
                write_csv(path, &rows)?;
            }
            let inputs = json!({ "to": to, "step": step, "csv": csv });
            let eval = Eval {
                value: json!(rows),
                err_est: None,
                sigma_used: Some(cfg.contour.sigma),
                nodes: None,
                fallback: None,
            };
            ok(envelope("lindelof", inputs, json!(cfg), eval, started))
        }
        Command::Check(CheckCmd::Vanishing { x, r, sigma, tol }) => {
            let spec = vanishing_spec(sigma);
            let spec = spec.with_tol(resolve_tol(tol, spec.tol)?);
            let residual = vanishing_residual(x, r, &spec)?;
            let passed = residual < VANISHING_TOL;
            let inputs = json!({ "x": x, "r": ComplexOut::from(r), "sigma": sigma });
            let eval = Eval {
                value: json!({ "residual": residual, "threshold": VANISHING_TOL, "pass": passed }),
                err_est: None,
                sigma_used: Some(sigma),
                nodes: None,
                fallback: None,
            };
            Ok(Outcome {
                envelope: envelope("check vanishing", inputs, json!(spec), eval, started),
                passed,
            })
        }
    }
}

fn fn_inputs(f: &FnArgs) -> Value {
    json!({ "s": ComplexOut::from(f.s), "sigma": f.sigma, "tol": f.tol })
}

fn gamma_cfg(f: &FnArgs) -> Result<GammaConfig, CliError> {
    let base = GammaConfig::default();
    let cfg = base.with_tol(resolve_tol(f.tol, base.contour.tol)?);
    Ok(match f.sigma {
        Some(s) => cfg.with_sigma(s),
        None => cfg,
    })
}

fn zeta_cfg(base: ZetaConfig, f: &FnArgs) -> Result<ZetaConfig, CliError> {
    let cfg = base.with_tol(resolve_tol(f.tol, base.contour.tol)?);
    Ok(match f.sigma {
        Some(s) => cfg.with_sigma(s),
        None => cfg,
    })
}

/// `ζ(s)` through the R family, with Jensen's formula near the positive integers.
fn zeta_eval(s: Complex, a: f64, cfg: &ZetaConfig) -> Result<Eval, CliError> {
    match hurwitz_zeta_result(s, a, cfg) {
        Ok(q) => Ok(Eval::quad(q)),
        Err(PmtError::NearPositiveInteger { .. }) if a == 1.0 => {
            Ok(Eval::fallback(jensen_result(s)?, "jensen"))
        }
        Err(PmtError::NearPositiveInteger { .. }) => {
            let v = hurwitz_euler_maclaurin(s, a)?;
            Ok(Eval {
                value: json!(ComplexOut::from(v)),
                err_est: None,
                sigma_used: None,
                nodes: None,
                fallback: Some("euler-maclaurin"),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn eta_eval(s: Complex, cfg: &ZetaConfig) -> Result<Eval, CliError> {
    match eta_result(s, cfg) {
        Ok(q) => Ok(Eval::quad(q)),
        Err(PmtError::NearPositiveInteger { .. }) => {
            if s == Complex::new(1.0, 0.0) {
                return Ok(Eval {
                    value: json!(ComplexOut::from(Complex::new(std::f64::consts::LN_2, 0.0))),
                    err_est: Some(0.0),
                    sigma_used: None,
                    nodes: None,
                    fallback: Some("closed-form"),
                });
            }
            let factor = 1.0 - (-(s - 1.0) * std::f64::consts::LN_2).exp();
            Ok(Eval::fallback(jensen_result(s)?.scaled(factor), "jensen"))
        }
        Err(e) => Err(e.into()),
    }
}

fn eval_cmd(cmd: EvalCmd, started: Instant) -> Result<Outcome, CliError> {
    match cmd {
        EvalCmd::Gamma(f) => gamma_family("eval gamma", gamma_result, f, started),
        EvalCmd::Rgamma(f) => gamma_family("eval rgamma", reciprocal_gamma_result, f, started),
        EvalCmd::Digamma(f) => gamma_family("eval digamma", digamma_result, f, started),
        EvalCmd::Zeta(f) => {
            let cfg = zeta_cfg(ZetaConfig::r(), &f)?;
            let eval = zeta_eval(f.s, 1.0, &cfg)?;
            ok(envelope(
                "eval zeta",
                fn_inputs(&f),
                json!(cfg),
                eval,
                started,
            ))
        }
        EvalCmd::Eta(f) => {
            let cfg = zeta_cfg(ZetaConfig::d(), &f)?;
            let eval = eta_eval(f.s, &cfg)?;
            ok(envelope(
                "eval eta",
                fn_inputs(&f),
                json!(cfg),
                eval,
                started,
            ))
        }
        EvalCmd::Hurwitz { f, a } => {
            let cfg = zeta_cfg(ZetaConfig::r().with_a(a), &f)?;
            let eval = zeta_eval(f.s, a, &cfg)?;
            let mut inputs = fn_inputs(&f);
            inputs["a"] = json!(a);
            ok(envelope("eval hurwitz", inputs, json!(cfg), eval, started))
        }
        EvalCmd::Moment {
            dist,
            r,
            sigma,
            tol,
        } => {
            let spec = moments::by_name(&dist)?;
            let base = MomentConfig::default();
            let cfg = MomentConfig {
                tol: resolve_tol(tol, base.tol)?,
                ..base
            };
            let sigma_used = sigma.unwrap_or_else(|| spec.default_sigma());
            let res = absolute_moment(&spec, r, Some(sigma_used), &cfg)?;
            let factor = gamma_reference(r + 1.0)?.norm() / (2.0 * std::f64::consts::PI);
            let inputs =
                json!({ "dist": dist, "r": ComplexOut::from(r), "sigma": sigma, "tol": tol });
            let settings = json!({
                "tol": cfg.tol,
                "taper_start": cfg.taper_start,
                "taper_width": cfg.taper_width,
                "max_nodes": cfg.max_nodes,
                "sigma_max": spec.sigma_max,
            });
            let eval = Eval {
                value: json!(ComplexOut::from(res.value)),
                err_est: Some(res.integral.err_est * factor),
                sigma_used: Some(sigma_used),
                nodes: Some(res.integral.nodes),
                fallback: None,
            };
            ok(envelope("eval moment", inputs, settings, eval, started))
        }
        EvalCmd::EulerGamma { tol } => {
            let base = GammaConfig::default();
            let cfg = base.with_tol(resolve_tol(tol, base.contour.tol)?);
            let value = euler_gamma(&cfg)?;
            let q = euler_gamma_result(&cfg)?;
            let eval = Eval {
                value: json!(ComplexOut::from(Complex::new(value, 0.0))),
                ..Eval::quad(q)
            };
            ok(envelope(
                "eval euler-gamma",
                json!({ "tol": tol }),
                json!(cfg),
                eval,
                started,
            ))
        }
    }
}

fn gamma_family(
    command: &str,
    f: fn(Complex, &GammaConfig) -> pmt_core::Result<QuadResult>,
    args: FnArgs,
    started: Instant,
) -> Result<Outcome, CliError> {
    let cfg = gamma_cfg(&args)?;
    let q = f(args.s, &cfg)?;
    ok(envelope(
        command,
        fn_inputs(&args),
        json!(cfg),
        Eval::quad(q),
        started,
    ))
}

fn pmt_cmd(cmd: PmtCmd, started: Instant) -> Result<Outcome, CliError> {
    match cmd {
        PmtCmd::Eval {
            entry,
            z,
            params,
            sigma,
            tol,
        } => {
            let mut e = lookup(&entry)?;
            for (k, v) in &params {
                e = e.with_param(k, *v)?;
            }
            let inputs = json!({
                "entry": entry,
                "z": ComplexOut::from(z),
                "params": params.iter().map(|(k, v)| json!({ "key": k, "value": v })).collect::<Vec<_>>(),
                "sigma": sigma,
                "tol": tol,
            });
            match e.mode {
                Mode::Absolute => {
                    let spec = ContourSpec::new(sigma.unwrap_or(e.default_sigma));
                    let spec = spec.with_tol(resolve_tol(tol, spec.tol)?);
                    let q = pmt_eval(&e, z, &spec)?;
                    let settings =
                        json!({ "mode": e.mode.label(), "contour": spec, "params": e.params });
                    ok(envelope(
                        "pmt eval",
                        inputs,
                        settings,
                        Eval::quad(q),
                        started,
                    ))
                }
                Mode::BoundaryAbel => {
                    if sigma.is_some_and(|s| s != 0.0) {
                        return Err(CliError::Usage(format!(
                            "entry {entry:?} is evaluated on the boundary; --sigma must be 0 or omitted"
                        )));
                    }
                    let mut schedule = AbelSchedule::default();
                    schedule.quad_tol = resolve_tol(tol, schedule.quad_tol)?;
                    let b = pmt_boundary_detailed(&e, z, &schedule)?;
                    let settings = json!({
                        "mode": e.mode.label(),
                        "epsilons": schedule.epsilons(),
                        "extrapolation": format!("{:?}", schedule.extrapolation).to_lowercase(),
                        "quad_tol": schedule.quad_tol,
                        "params": e.params,
                    });
                    let eval = Eval {
                        value: json!(ComplexOut::from(b.value)),
                        err_est: Some(b.err_est),
                        sigma_used: Some(0.0),
                        nodes: Some(b.nodes),
                        fallback: None,
                    };
                    ok(envelope("pmt eval", inputs, settings, eval, started))
                }
            }
        }
        PmtCmd::VerifyTable { entries, extended } => {
            let names: Vec<&str> = entries.iter().map(String::as_str).collect();
            let report = dictionary_verify(&names, None, None)?;
            let mut passed = report.pass;
            let mut value =
                serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?;
            let mut err_est = max_dev(&report);
            if extended {
                let (props, ok_props, dev) = run_properties(&Property::ALL)?;
                passed &= ok_props;
                err_est = err_est.max(dev);
                value["properties"] = props;
            }
            let inputs = json!({ "entries": entries, "extended": extended });
            let settings = json!({
                "absolute_tol": pmt_core::pmt::verify::ABSOLUTE_TOL,
                "boundary_tol": pmt_core::pmt::verify::BOUNDARY_TOL,
                "abel_epsilons": AbelSchedule::default().epsilons(),
            });
            let eval = Eval {
                value,
                err_est: Some(err_est),
                sigma_used: None,
                nodes: None,
                fallback: None,
            };
            Ok(Outcome {
                envelope: envelope("pmt verify-table", inputs, settings, eval, started),
                passed,
            })
        }
        PmtCmd::VerifyProps { props, extended } => {
            let selected: Vec<Property> = if props.is_empty() {
                Property::ALL
                    .into_iter()
                    .filter(|p| extended || !p.is_slow())
                    .collect()
            } else {
                props
                    .iter()
                    .map(|p| Property::from_name(p))
                    .collect::<Result<_, _>>()
                    .map_err(|e| CliError::Usage(e.to_string()))?
            };
            let (value, passed, dev) = run_properties(&selected)?;
            let inputs = json!({ "props": props, "extended": extended });
            let settings = json!({
                "property_tol": pmt_core::pmt::verify::PROPERTY_TOL,
                "convolution_tol": pmt_core::pmt::verify::CONVOLUTION_TOL,
                "params": property_params_json(&PropertyParams::default()),
            });
            let eval = Eval {
                value,
                err_est: Some(dev),
                sigma_used: Some(1.0),
                nodes: None,
                fallback: None,
            };
            Ok(Outcome {
                envelope: envelope("pmt verify-props", inputs, settings, eval, started),
                passed,
            })
        }
    }
}

fn property_params_json(p: &PropertyParams) -> Value {
    json!({
        "alphas": p.alphas,
        "ks": p.ks,
        "fd_step": p.fd_step,
        "inversion_u": p.inversion_u,
    })
}

fn max_dev(report: &VerificationReport) -> f64 {
    report.rows.iter().map(|r| r.abs_dev).fold(0.0, f64::max)
}

fn run_properties(props: &[Property]) -> Result<(Value, bool, f64), CliError> {
    let cfg = ContourSpec::new(1.0);
    let params = PropertyParams::default();
    let mut out = serde_json::Map::new();
    let mut passed = true;
    let mut dev = 0.0f64;
    for &p in props {
        let report = property_report(p, &params, &cfg)?;
        passed &= report.pass;
        dev = dev.max(max_dev(&report));
        out.insert(
            p.name().to_string(),
            serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?,
        );
    }
    Ok((Value::Object(out), passed, dev))
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex::new(re, im);
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("-1.5-0.25i").unwrap(), c(-1.5, -0.25));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), c(1e-3, 25.0));
        assert_eq!(parse_complex("-2e-1").unwrap(), c(-0.2, 0.0));
        for bad in ["", "1 + 2i", "1+2j", "abc", "1+2ii", "nan", "inf"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn params() {
        assert_eq!(
            parse_param("alpha=0.5").unwrap(),
            ("alpha".to_string(), 0.5)
        );
        assert!(parse_param("alpha").is_err());
        assert!(parse_param("alpha=x").is_err());
    }
}
