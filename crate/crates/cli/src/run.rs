//! The run pipeline: plane, curve, validation, operation, outputs.

use crate::catalog::{self, CatalogError, Params};
use crate::config::{invalid, ConfigError, CurveConfig, Loaded, NormConfig, OperationConfig};
use crate::csv_io::{self, CsvLoadError, Row};
use crate::expr::{self, EvalError, Expr};
use crate::report;
use crate::svg::{self, Plot, Trace};
use legendre_core::analysis::{
    circular_curvature, contact_implies_curvature_match, contact_order, maslov_index,
    singularity_report, transfer_legendre, LegendreCurve, LEGENDRE_TOL,
};
use legendre_core::curve::{extend_normal, ParamCurve};
use legendre_core::derived::{evolute, involute, parallel, pedal};
use legendre_core::plane::{NormSpec, NormedPlane};
use legendre_core::synthesis::{synthesize, SynthesisSpec};
use legendre_core::{Error, Report, Vec2};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const DEFAULT_SAMPLES: usize = 2048;

/// Below this `|α|` the circular curvature `κ/α` is left blank.
const K_GATE: f64 = 1e-6;

type Plane = Arc<NormedPlane<f64>>;
type Curve = LegendreCurve<f64>;

/// Command line overrides.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub samples: Option<usize>,
    /// Directory that relative output paths refer to.
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("cannot read curve samples from {path}: {source}")]
    Csv { path: PathBuf, source: CsvLoadError },
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl From<CatalogError> for RunError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Core(e) => RunError::Core(e),
            other => RunError::Config(invalid(other.to_string())),
        }
    }
}

impl RunError {
    /// 1 I/O, 2 configuration, 3 validation, 4 non-convergence,
    /// 5 unmet operation precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Core(e) => core_exit_code(e),
            RunError::Eval(_) => 3,
            RunError::Csv { source, .. } => match source {
                CsvLoadError::Io(_) => 1,
                CsvLoadError::Input(_) => 2,
                CsvLoadError::Core(e) => core_exit_code(e),
            },
            RunError::Io { .. } => 1,
        }
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    use Error::*;
    match e {
        ConvexityViolation { .. }
        | PositivityViolation { .. }
        | BadParameter(_)
        | ZeroVector
        | NotUnit { .. }
        | InvalidCurve(_)
        | LimitsDisagree { .. }
        | NotLegendre { .. }
        | DegenerateFrame { .. } => 3,
        NoConvergence(_) | MethodsDisagree { .. } => 4,
        OutOfDomain { .. }
        | SingularPoint { .. }
        | NotAFront { .. }
        | NotClosed
        | PreconditionViolated(_)
        | NotAnIsometry { .. }
        | KappaVanishes { .. }
        | RhoDegenerate { .. }
        | DegenerateLine { .. } => 5,
    }
}

/// Files written by a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Written {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

/// Everything an operation produces before it is written out.
pub struct Product {
    pub rows: Vec<Row>,
    pub plot: Plot,
    pub report: Report,
    pub operation: Value,
}

pub fn build_plane(cfg: &NormConfig) -> Result<Plane, RunError> {
    let forbid = |field: &str, set: bool| -> Result<(), ConfigError> {
        if set {
            Err(invalid(format!(
                "`{field}` does not apply to a {} norm",
                cfg.kind
            )))
        } else {
            Ok(())
        }
    };
    let spec = match cfg.kind.as_str() {
        "euclidean" => {
            forbid("p", cfg.p.is_some())?;
            forbid("coefficients", cfg.coefficients.is_some())?;
            NormSpec::euclidean()
        }
        "lp" => {
            forbid("coefficients", cfg.coefficients.is_some())?;
            NormSpec::lp(cfg.p.ok_or_else(|| invalid("an lp norm needs `p`"))?)
        }
        "fourier_radial" => {
            forbid("p", cfg.p.is_some())?;
            let c = cfg
                .coefficients
                .clone()
                .ok_or_else(|| invalid("a fourier_radial norm needs `coefficients`"))?;
            NormSpec::fourier_radial(c)
        }
        other => {
            return Err(invalid(format!(
                "unknown norm kind `{other}` (expected euclidean, lp or fourier_radial)"
            ))
            .into())
        }
    };
    let spec = match cfg.grid {
        Some(n) => spec.with_table_size(n),
        None => spec,
    };
    Ok(Arc::new(NormedPlane::build(spec)?))
}

fn parse_field(field: &str, text: &str) -> Result<Expr, ConfigError> {
    let e = expr::parse(text).map_err(|source| ConfigError::Expression {
        field: field.to_string(),
        source,
    })?;
    for f in e.guarded_calls() {
        eprintln!("warning: `{field}` calls {f}, which fails outside its domain");
    }
    Ok(e)
}

fn domain_of(cfg: &CurveConfig) -> Result<(f64, f64), ConfigError> {
    let [a, b] = cfg.domain.ok_or_else(|| invalid("missing `domain`"))?;
    if !(a < b && a.is_finite() && b.is_finite()) {
        return Err(invalid(format!(
            "domain [{a}, {b}] must be finite with a < b"
        )));
    }
    Ok((a, b))
}

fn check_on_grid(exprs: &[&Expr], domain: (f64, f64), samples: usize) -> Result<(), EvalError> {
    let n = samples.max(2);
    for i in 0..n {
        let t = domain.0 + (domain.1 - domain.0) * i as f64 / (n - 1) as f64;
        for e in exprs {
            e.eval_checked(t)?;
        }
    }
    Ok(())
}

/// Frontal from a bare curve, with `η` extended through singular points.
fn frontal(plane: &Plane, c: ParamCurve<f64>, tolerance: f64) -> Result<Curve, Error> {
    let normal = extend_normal(plane, &c)?;
    LegendreCurve::with_tolerance(plane.clone(), c, normal, tolerance)
}

pub fn build_curve(
    cfg: &CurveConfig,
    plane: &Plane,
    samples: usize,
    tolerance: f64,
    base: &Path,
) -> Result<Curve, RunError> {
    match cfg.kind.as_str() {
        "expression" => {
            let x = parse_field("curve.x", cfg.x.as_deref().unwrap_or_default())?;
            let y = parse_field("curve.y", cfg.y.as_deref().unwrap_or_default())?;
            let domain = domain_of(cfg)?;
            check_on_grid(&[&x, &y], domain, samples)?;
            let closed = cfg.closed.unwrap_or(false);
            let c = ParamCurve::new(domain, closed, move |t| Vec2::new(x.eval(t), y.eval(t)))?
                .with_samples(samples);
            Ok(frontal(plane, c, tolerance)?)
        }
        "catalog" => {
            let params = Params {
                radius: cfg.radius,
                a: cfg.a,
                b: cfg.b,
                harmonic: cfg.harmonic,
            };
            Ok(catalog::build(
                cfg.name.as_deref().unwrap_or_default(),
                params,
                plane,
                samples,
            )?)
        }
        "csv" => {
            let path = base.join(cfg.path.as_deref().unwrap_or(Path::new("")));
            let c = csv_io::load_curve(&path, cfg.closed.unwrap_or(false))
                .map_err(|source| RunError::Csv { path, source })?;
            Ok(frontal(plane, c, tolerance)?)
        }
        "synthesis" => {
            let alpha = parse_field("curve.alpha", cfg.alpha.as_deref().unwrap_or_default())?;
            let kappa = parse_field("curve.kappa", cfg.kappa.as_deref().unwrap_or_default())?;
            let domain = domain_of(cfg)?;
            check_on_grid(&[&alpha, &kappa], domain, samples)?;
            let [px, py] = cfg.gamma0.unwrap_or([0.0, 0.0]);
            let v = plane.boundary(cfg.eta0_angle.unwrap_or(0.0));
            let spec = SynthesisSpec::new(
                move |t| alpha.eval(t),
                move |t| kappa.eval(t),
                domain,
                Vec2::new(px, py),
                v,
            )
            .closed(cfg.closed.unwrap_or(false))
            .with_samples(samples);
            Ok(synthesize(plane, &spec)?)
        }
        other => Err(invalid(format!("unknown curve kind `{other}`")).into()),
    }
}

fn k_of(alpha: f64, kappa: f64) -> Option<f64> {
    (alpha.abs() > K_GATE).then(|| kappa / alpha)
}

fn measured_rows(l: &Curve) -> Result<Vec<Row>, Error> {
    let cp = l.curvature_pair()?;
    let k = circular_curvature(&cp);
    Ok(cp
        .t
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let p = l.gamma(t);
            Row {
                t,
                x: p.x,
                y: p.y,
                alpha: Some(cp.alpha[i]),
                kappa: Some(cp.kappa[i]),
                k: k[i],
            }
        })
        .collect())
}

fn trace(label: &str, color: &'static str, l: &Curve) -> Trace {
    Trace {
        label: label.to_string(),
        color,
        points: l.grid().into_iter().map(|t| l.gamma(t)).collect(),
        closed: l.curve().is_closed(),
    }
}

fn mark(plot: &mut Plot, l: &Curve, r: &Report) {
    plot.cusps.extend(r.cusps.iter().map(|c| l.gamma(c.t)));
    plot.vertices
        .extend(r.vertices.iter().map(|v| l.gamma(v.t)));
    plot.inflections
        .extend(r.inflections.iter().map(|i| l.gamma(i.t)));
}

fn report_of(l: &Curve) -> Result<Report, Error> {
    singularity_report(l, &l.curvature_pair()?)
}

fn require<T>(v: Option<T>, op: &str, field: &str) -> Result<T, ConfigError> {
    v.ok_or_else(|| invalid(format!("operation {op} needs `{field}`")))
}

fn check_operation_fields(op: &OperationConfig) -> Result<(), ConfigError> {
    let present = [
        ("d", op.d.is_some()),
        ("point", op.point.is_some()),
        ("second", op.second.is_some()),
        ("t0", op.t0.is_some()),
        ("u0", op.u0.is_some()),
        ("kmax", op.kmax.is_some()),
        ("target", op.target.is_some()),
    ];
    let allowed: &[&str] = match op.kind.as_str() {
        "analyze" | "maslov" | "evolute" => &[],
        "involute" | "parallel" => &["d"],
        "pedal" => &["point"],
        "contact" => &["second", "t0", "u0", "kmax"],
        "transfer" => &["target"],
        other => {
            return Err(invalid(format!(
                "unknown operation `{other}` (expected analyze, maslov, evolute, involute, pedal, parallel, contact or transfer)"
            )))
        }
    };
    match present.iter().find(|(f, set)| *set && !allowed.contains(f)) {
        Some((f, _)) => Err(invalid(format!(
            "`{f}` does not apply to operation {}",
            op.kind
        ))),
        None => Ok(()),
    }
}

/// Runs the operation on an already validated curve.
pub fn operate(
    op: &OperationConfig,
    l: &Curve,
    samples: usize,
    tolerance: f64,
    base: &Path,
) -> Result<Product, RunError> {
    check_operation_fields(op)?;
    let source = report_of(l)?;
    let mut plot = Plot {
        curves: vec![trace("curve", "black", l)],
        ..Plot::default()
    };
    let kind = op.kind.as_str();
    let product = match kind {
        "analyze" => {
            mark(&mut plot, l, &source);
            let operation = json!({
                "kind": kind,
                "samples": l.curve().samples(),
                "legendre_residual": l.residual(),
            });
            Product {
                rows: measured_rows(l)?,
                plot,
                report: source,
                operation,
            }
        }
        "maslov" => {
            let m = maslov_index(l, &l.curvature_pair()?)?;
            mark(&mut plot, l, &source);
            let operation = json!({ "kind": kind, "maslov": m });
            Product {
                rows: measured_rows(l)?,
                plot,
                report: source,
                operation,
            }
        }
        "evolute" => {
            let ev = evolute(l)?;
            let rows =
                ev.t.iter()
                    .enumerate()
                    .map(|(i, &t)| {
                        let p = ev.point(t);
                        Row {
                            t,
                            x: p.x,
                            y: p.y,
                            alpha: Some(ev.alpha[i]),
                            kappa: ev.kappa[i],
                            k: ev.kappa[i].and_then(|k| k_of(ev.alpha[i], k)),
                        }
                    })
                    .collect();
            let derived = report_of(&ev.frame)?;
            plot.curves.push(trace("evolute", "steelblue", &ev.frame));
            mark(&mut plot, &ev.frame, &derived);
            let operation = json!({ "kind": kind, "evolute": derived });
            Product {
                rows,
                plot,
                report: source,
                operation,
            }
        }
        "involute" => {
            let d = require(op.d, kind, "d")?;
            let inv = involute(l, d)?;
            let rows = inv
                .t
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    let p = inv.legendre.gamma(t);
                    Row {
                        t,
                        x: p.x,
                        y: p.y,
                        alpha: Some(inv.alpha[i]),
                        kappa: Some(inv.kappa[i]),
                        k: k_of(inv.alpha[i], inv.kappa[i]),
                    }
                })
                .collect();
            let derived = report_of(&inv.legendre)?;
            plot.curves
                .push(trace("involute", "steelblue", &inv.legendre));
            mark(&mut plot, &inv.legendre, &derived);
            let operation = json!({ "kind": kind, "d": d, "anchor": inv.anchor, "opened": inv.opened, "involute": derived });
            Product {
                rows,
                plot,
                report: source,
                operation,
            }
        }
        "parallel" => {
            let d = require(op.d, kind, "d")?;
            let par = parallel(l, d)?;
            let derived = report_of(&par)?;
            plot.curves.push(trace("parallel", "steelblue", &par));
            mark(&mut plot, &par, &derived);
            let operation = json!({ "kind": kind, "d": d, "parallel": derived });
            Product {
                rows: measured_rows(&par)?,
                plot,
                report: source,
                operation,
            }
        }
        "pedal" => {
            let [px, py] = require(op.point, kind, "point")?;
            let p = Vec2::new(px, py);
            let pr = pedal(l, p)?;
            let points: Vec<_> = pr.t.iter().map(|&t| pr.curve.position(t)).collect();
            let rows =
                pr.t.iter()
                    .zip(&points)
                    .map(|(&t, q)| Row {
                        t,
                        x: q.x,
                        y: q.y,
                        alpha: None,
                        kappa: None,
                        k: None,
                    })
                    .collect();
            plot.curves.push(Trace {
                label: "pedal".into(),
                color: "steelblue",
                points,
                closed: pr.curve.is_closed(),
            });
            plot.cusps
                .extend(pr.singular.iter().map(|&t| pr.curve.position(t)));
            let operation = json!({
                "kind": kind,
                "point": [px, py],
                "singular": pr.singular,
                "min_distance": pr.min_distance,
                "point_on_curve": pr.p_on_curve,
            });
            Product {
                rows,
                plot,
                report: source,
                operation,
            }
        }
        "contact" => {
            let second = require(op.second.as_deref(), kind, "second")?;
            let samples2 = second.samples.unwrap_or(samples);
            if samples2 == 0 {
                return Err(invalid("samples must be positive").into());
            }
            let l2 = build_curve(second, l.plane(), samples2, tolerance, base)?;
            let (t0, u0, kmax) = (
                op.t0.unwrap_or(0.0),
                op.u0.unwrap_or(0.0),
                op.kmax.unwrap_or(4),
            );
            let order = contact_order(l, t0, &l2, u0, kmax)?;
            let matching = if order > 0 {
                Some(contact_implies_curvature_match(l, t0, &l2, u0, order)?)
            } else {
                None
            };
            mark(&mut plot, l, &source);
            plot.curves.push(trace("second", "steelblue", &l2));
            let operation = json!({
                "kind": kind,
                "t0": t0,
                "u0": u0,
                "kmax": kmax,
                "order": order,
                "curvature_match": matching,
            });
            Product {
                rows: measured_rows(l)?,
                plot,
                report: source,
                operation,
            }
        }
        "transfer" => {
            let target = build_plane(require(op.target.as_ref(), kind, "target")?)?;
            let moved = transfer_legendre(l, &target)?;
            let derived = report_of(&moved)?;
            mark(&mut plot, &moved, &derived);
            let operation = json!({
                "kind": kind,
                "legendre_residual": moved.residual(),
                "transferred": derived,
            });
            Product {
                rows: measured_rows(&moved)?,
                plot,
                report: source,
                operation,
            }
        }
        _ => unreachable!("operation kinds are checked above"),
    };
    Ok(product)
}

/// Plane, curve and operation for a loaded config, without writing files.
pub fn evaluate(loaded: &Loaded, overrides: &Overrides) -> Result<Product, RunError> {
    let cfg = &loaded.config;
    check_operation_fields(&cfg.operation)?;
    let samples = overrides
        .samples
        .or(cfg.numeric.samples)
        .or(cfg.curve.samples)
        .unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(invalid("samples must be positive").into());
    }
    let tolerance = cfg.numeric.legendre_tolerance.unwrap_or(LEGENDRE_TOL);
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(invalid("legendre_tolerance must be positive").into());
    }
    let plane = build_plane(&cfg.norm)?;
    let l = build_curve(&cfg.curve, &plane, samples, tolerance, &loaded.base)?;
    operate(&cfg.operation, &l, samples, tolerance, &loaded.base)
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn output_path(p: &Path, out: Option<&Path>) -> PathBuf {
    match out {
        Some(dir) => dir.join(p),
        None => p.to_path_buf(),
    }
}

pub fn run(loaded: &Loaded, overrides: &Overrides) -> Result<Written, RunError> {
    let product = evaluate(loaded, overrides)?;
    let outputs = &loaded.config.output;
    let out = overrides.out.as_deref();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| RunError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    let mut written = Written::default();
    if let Some(p) = &outputs.csv {
        let path = output_path(p, out);
        csv_io::emit_csv(&product.rows, &path).map_err(io(&path))?;
        written.csv = Some(path);
    }
    if let Some(p) = &outputs.svg {
        let path = output_path(p, out);
        svg::emit_svg(&product.plot, &path).map_err(io(&path))?;
        written.svg = Some(path);
    }
    if let Some(p) = &outputs.report {
        let path = output_path(p, out);
        report::emit_report(&product.report, &product.operation, &path).map_err(io(&path))?;
        written.report = Some(path);
    }
    Ok(written)
}

/// Loads and runs a config file, reporting failures on stderr; returns
/// the process exit code.
pub fn run_file(path: &Path, overrides: &Overrides) -> i32 {
    let result = crate::config::load_config(path)
        .map_err(RunError::from)
        .and_then(|loaded| run(&loaded, overrides));
    match result {
        Ok(w) => {
            for p in [&w.csv, &w.svg, &w.report].into_iter().flatten() {
                eprintln!("wrote {}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
