#![allow(dead_code)]

use legendre_core::analysis::LegendreCurve;
use legendre_core::curve::{NormalField, ParamCurve, Provenance};
use legendre_core::numeric::quad::gauss8;
use legendre_core::plane::{NormSpec, NormedPlane};
use legendre_core::synthesis::{synthesize, SynthesisSpec};
use legendre_core::Vec2;
use std::f64::consts::TAU;
use std::sync::Arc;

pub type L = LegendreCurve<f64>;

pub fn euclid() -> Arc<NormedPlane<f64>> {
    Arc::new(NormedPlane::build(NormSpec::euclidean()).unwrap())
}

pub fn l3() -> Arc<NormedPlane<f64>> {
    Arc::new(NormedPlane::build(NormSpec::lp(3.0)).unwrap())
}

pub fn closed(
    plane: Arc<NormedPlane<f64>>,
    f: impl Fn(f64) -> Vec2<f64> + Send + Sync + 'static,
) -> L {
    let c = ParamCurve::new((0.0, TAU), true, f).unwrap();
    LegendreCurve::from_curve(plane, c).unwrap()
}

pub fn open(
    plane: Arc<NormedPlane<f64>>,
    domain: (f64, f64),
    f: impl Fn(f64) -> Vec2<f64> + Send + Sync + 'static,
) -> L {
    let c = ParamCurve::new(domain, false, f).unwrap();
    LegendreCurve::from_curve(plane, c).unwrap()
}

/// The plane's own unit circle `c(θ)` with the normal `η = c`.
pub fn unit_circle_of(plane: &Arc<NormedPlane<f64>>) -> L {
    let p = plane.clone();
    let c = ParamCurve::new((0.0, TAU), true, move |t| p.boundary(t)).unwrap();
    let p = plane.clone();
    let eta = NormalField::new(&c, Provenance::Analytic, move |t| p.boundary(t));
    LegendreCurve::new(plane.clone(), c, eta).unwrap()
}

pub fn circle(r: f64) -> L {
    closed(euclid(), move |t| Vec2::new(r * t.cos(), r * t.sin()))
}

pub fn ellipse() -> L {
    closed(euclid(), |t| Vec2::new(2.0 * t.cos(), t.sin()))
}

pub fn astroid() -> L {
    closed(euclid(), |t| Vec2::new(t.cos().powi(3), t.sin().powi(3)))
}

pub fn semicubical() -> L {
    open(euclid(), (-1.0, 1.0), |t| Vec2::new(t * t, t * t * t))
}

/// Even `α = Σ cᵢ cos(kᵢ t)` orthogonal to `sin(1 − cos t)` and
/// `cos(1 − cos t)`, normalised, for the closed front with `κ = sin t`.
pub fn maslov_coefficients(ks: [f64; 3]) -> [f64; 3] {
    let cells = 256;
    let h = TAU / cells as f64;
    let row = |k: f64, f: &dyn Fn(f64) -> f64| -> f64 {
        (0..cells)
            .map(|i| {
                gauss8(
                    |t: f64| (k * t).cos() * f(t),
                    i as f64 * h,
                    (i + 1) as f64 * h,
                )
            })
            .sum()
    };
    let s = |t: f64| (1.0 - t.cos()).sin();
    let c = |t: f64| (1.0 - t.cos()).cos();
    let a: Vec<f64> = ks.iter().map(|&k| row(k, &s)).collect();
    let b: Vec<f64> = ks.iter().map(|&k| row(k, &c)).collect();
    let v = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

pub fn maslov_front(ks: [f64; 3]) -> L {
    let c = maslov_coefficients(ks);
    let alpha = move |t: f64| {
        c[0] * (ks[0] * t).cos() + c[1] * (ks[1] * t).cos() + c[2] * (ks[2] * t).cos()
    };
    let spec = SynthesisSpec::new(
        alpha,
        |t: f64| t.sin(),
        (0.0, TAU),
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
    )
    .closed(true);
    synthesize(&euclid(), &spec).unwrap()
}

/// Right pedal branch of the `l_p` unit circle from `(0, 1)`, `t ∈ [0, 2]`.
pub fn lp_pedal_branch(p: f64, t: f64) -> Vec2<f64> {
    let q = p / (p - 1.0);
    if t <= 1.0 {
        let a = t.powf(1.0 / p);
        Vec2::new(a - a * (1.0 - t).powf(1.0 / q), t + (1.0 - t).powf(1.0 / p))
    } else {
        let a = (2.0 - t).powf(1.0 / p);
        Vec2::new(
            a + a * (t - 1.0).powf(1.0 / q),
            2.0 - t - (t - 1.0).powf(1.0 / p),
        )
    }
}

/// Both branches and the mirror image, sampled with `n` points per branch
/// under a substitution that is flat to third order at the branch ends,
/// where the printed formula has cube-root behaviour.
pub fn lp_pedal_points(p: f64, n: usize) -> Vec<Vec2<f64>> {
    let flat = |u: f64| u.powi(3) / (u.powi(3) + (1.0 - u).powi(3));
    let mut right = Vec::with_capacity(2 * n + 2);
    for branch in 0..2 {
        for i in 0..=n {
            right.push(lp_pedal_branch(
                p,
                branch as f64 + flat(i as f64 / n as f64),
            ));
        }
    }
    let mirror: Vec<Vec2<f64>> = right.iter().rev().map(|v| Vec2::new(-v.x, v.y)).collect();
    right.extend(mirror);
    right
}

pub fn max_by<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> f64) -> f64 {
    items.into_iter().map(f).fold(0.0, f64::max)
}
