//! Named fixture curves.

use legendre_core::analysis::LegendreCurve;
use legendre_core::curve::{NormalField, ParamCurve, Provenance};
use legendre_core::numeric::quad::gauss8;
use legendre_core::plane::{NormKind, NormedPlane};
use legendre_core::synthesis::{synthesize, SynthesisSpec};
use legendre_core::{Error, Vec2};
use std::f64::consts::TAU;
use std::sync::Arc;

pub const NAMES: [&str; 6] = [
    "circle",
    "ellipse",
    "astroid",
    "cusp_t2t3",
    "unit_circle_of_norm",
    "maslov_front",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub radius: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub harmonic: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog curve `{0}` (known: {known})", known = NAMES.join(", "))]
    Unknown(String),
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Core(#[from] Error),
}

type Curve = LegendreCurve<f64>;

pub fn build(
    name: &str,
    params: Params,
    plane: &Arc<NormedPlane<f64>>,
    samples: usize,
) -> Result<Curve, CatalogError> {
    let used: &[&str] = match name {
        "circle" => &["radius"],
        "ellipse" => &["a", "b"],
        "maslov_front" => &["harmonic"],
        _ => &[],
    };
    let given = [
        ("radius", params.radius.is_some()),
        ("a", params.a.is_some()),
        ("b", params.b.is_some()),
        ("harmonic", params.harmonic.is_some()),
    ];
    if NAMES.contains(&name) {
        if let Some((p, _)) = given.iter().find(|(p, set)| *set && !used.contains(p)) {
            return Err(CatalogError::Parameter(format!(
                "`{p}` does not apply to {name}"
            )));
        }
    }
    match name {
        "circle" => {
            let r = params.radius.unwrap_or(1.0);
            if !(r > 0.0 && r.is_finite()) {
                return Err(CatalogError::Parameter(format!(
                    "radius must be positive, got {r}"
                )));
            }
            minkowski_circle(plane, r, samples)
        }
        "unit_circle_of_norm" => unit_circle_by_arc_length(plane, samples),
        "ellipse" => {
            let (a, b) = (params.a.unwrap_or(2.0), params.b.unwrap_or(1.0));
            if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
                return Err(CatalogError::Parameter(format!(
                    "semi-axes must be positive, got {a}, {b}"
                )));
            }
            frontal(plane, (0.0, TAU), true, samples, move |t| {
                Vec2::new(a * t.cos(), b * t.sin())
            })
        }
        "astroid" => frontal(plane, (0.0, TAU), true, samples, |t| {
            Vec2::new(t.cos().powi(3), t.sin().powi(3))
        }),
        "cusp_t2t3" => frontal(plane, (-1.0, 1.0), false, samples, |t| {
            Vec2::new(t * t, t * t * t)
        }),
        "maslov_front" => {
            if !matches!(plane.spec().kind, NormKind::Euclidean) {
                return Err(CatalogError::Parameter(
                    "maslov_front closes only in the euclidean plane".into(),
                ));
            }
            let k = params.harmonic.unwrap_or(2);
            if k < 2 {
                return Err(CatalogError::Parameter(format!(
                    "harmonic must be at least 2, got {k}"
                )));
            }
            maslov_front(plane, k as f64, samples)
        }
        other => Err(CatalogError::Unknown(other.to_string())),
    }
}

fn frontal(
    plane: &Arc<NormedPlane<f64>>,
    domain: (f64, f64),
    closed: bool,
    samples: usize,
    f: impl Fn(f64) -> Vec2<f64> + Send + Sync + 'static,
) -> Result<Curve, CatalogError> {
    let c = ParamCurve::new(domain, closed, f)?.with_samples(samples);
    Ok(LegendreCurve::from_curve(plane.clone(), c)?)
}

/// `r·c(θ)` with the exact normal `η = c(θ)`.
///
/// The normal is not recovered numerically: where the unit circle is flat
/// (the axes of `l_p`, `p > 2`) the inverse Birkhoff map loses half the
/// digits.
pub fn minkowski_circle(
    plane: &Arc<NormedPlane<f64>>,
    r: f64,
    samples: usize,
) -> Result<Curve, CatalogError> {
    let p = plane.clone();
    let c = ParamCurve::new((0.0, TAU), true, move |t| p.boundary(t) * r)?.with_samples(samples);
    let p = plane.clone();
    let eta = NormalField::new(&c, Provenance::Analytic, move |t| p.boundary(t));
    Ok(LegendreCurve::new(plane.clone(), c, eta)?)
}

/// Unit circle by norm arc length `u ∈ [0, L)`, so that `α = κ ≡ 1`.
pub fn unit_circle_by_arc_length(
    plane: &Arc<NormedPlane<f64>>,
    samples: usize,
) -> Result<Curve, CatalogError> {
    let p = plane.clone();
    let point = move |u: f64| {
        p.unit_circle_point(u)
            .unwrap_or_else(|_| Vec2::new(f64::NAN, f64::NAN))
    };
    let c =
        ParamCurve::new((0.0, plane.total_length()), true, point.clone())?.with_samples(samples);
    let eta = NormalField::new(&c, Provenance::Analytic, point);
    Ok(LegendreCurve::new(plane.clone(), c, eta)?)
}

/// Coefficients `(c₀, c₁, c₂)` of the even `α = c₀ + c₁ cos t + c₂ cos kt`
/// that is L²-orthogonal to `sin(1 − cos t)` and `cos(1 − cos t)`, with
/// unit Euclidean length.
///
/// These two conditions close the front with `κ = sin t`.
pub fn maslov_coefficients(k: f64) -> [f64; 3] {
    let cells = 256;
    let h = TAU / cells as f64;
    let basis = [0.0, 1.0, k];
    let integral = |m: f64, g: fn(f64) -> f64| -> f64 {
        (0..cells)
            .map(|i| {
                gauss8(
                    |t: f64| (m * t).cos() * g(t),
                    i as f64 * h,
                    (i + 1) as f64 * h,
                )
            })
            .sum()
    };
    let r1 = basis.map(|m| integral(m, |t| (1.0 - t.cos()).sin()));
    let r2 = basis.map(|m| integral(m, |t| (1.0 - t.cos()).cos()));
    // The null vector of the 2×3 system is the cross product of its rows.
    let v = [
        r1[1] * r2[2] - r1[2] * r2[1],
        r1[2] * r2[0] - r1[0] * r2[2],
        r1[0] * r2[1] - r1[1] * r2[0],
    ];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

pub fn maslov_front(
    plane: &Arc<NormedPlane<f64>>,
    k: f64,
    samples: usize,
) -> Result<Curve, CatalogError> {
    let c = maslov_coefficients(k);
    let alpha = move |t: f64| c[0] + c[1] * t.cos() + c[2] * (k * t).cos();
    let spec = SynthesisSpec::new(
        alpha,
        |t: f64| t.sin(),
        (0.0, TAU),
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
    )
    .closed(true)
    .with_samples(samples);
    Ok(synthesize(plane, &spec)?)
}
