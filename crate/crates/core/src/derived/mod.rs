//! Parallels, evolutes, involutes, pedal curves and osculating circles.

mod evolute;
mod involute;
mod pedal;

pub use evolute::{
    default_d_grid, evolute, evolute_as_parallel_singularities, EvoluteFrame, FRAME_RHO_GATE,
};
pub use involute::{involute, Involute};
pub use pedal::{pedal, pedal_derivative, pedal_envelope_residual, PedalEnvelope, PedalResult};

use crate::analysis::{CurvaturePair, LegendreCurve};
use crate::curve::ParamCurve;
use crate::error::{Error, Result};
use crate::numeric::fd;
use crate::scalar::{lit, to_f64, Real};
use crate::vector::Vec2;
use serde::Serialize;

// Relative level below which α or κ counts as zero.
const ZERO_REL: f64 = 1e-6;

/// Fails with `NotAFront` where `α` and `κ` vanish together on the grid.
pub(crate) fn require_front<T: Real>(cp: &CurvaturePair<T>) -> Result<()> {
    let a = cp.max_abs_alpha().max(T::min_positive_value());
    let k = cp.max_abs_kappa().max(T::min_positive_value());
    let gate: T = lit(ZERO_REL);
    for i in 0..cp.len() {
        if cp.alpha[i].abs() / a <= gate && cp.kappa[i].abs() / k <= gate {
            return Err(Error::NotAFront { t: to_f64(cp.t[i]) });
        }
    }
    Ok(())
}

/// Fails with `KappaVanishes` where `|κ| ≤ 1e-6·max|κ|` on the grid or `κ`
/// changes sign between grid points.
pub(crate) fn require_kappa<T: Real>(cp: &CurvaturePair<T>) -> Result<()> {
    let k = cp.max_abs_kappa();
    let gate = k * lit(ZERO_REL);
    if let Some(i) = cp.kappa.iter().position(|x| !(x.abs() > gate)) {
        return Err(Error::KappaVanishes { t: to_f64(cp.t[i]) });
    }
    let n = cp.len();
    let pairs = if cp.closed { n } else { n - 1 };
    for i in 0..pairs {
        let j = (i + 1) % n;
        if (cp.kappa[i] > T::zero()) != (cp.kappa[j] > T::zero()) {
            return Err(Error::KappaVanishes { t: to_f64(cp.t[i]) });
        }
    }
    Ok(())
}

/// Curve with the same domain, closure and sampling as `like`.
pub(crate) fn curve_like<T: Real, F>(like: &ParamCurve<T>, f: F) -> Result<ParamCurve<T>>
where
    F: Fn(T) -> Vec2<T> + Send + Sync + 'static,
{
    Ok(ParamCurve::new(like.domain(), like.is_closed(), f)?.with_samples(like.samples()))
}

/// Parallel `γ + dη` with the same normal; its pair is `(α + dκ, κ)`.
pub fn parallel<T: Real>(l: &LegendreCurve<T>, d: T) -> Result<LegendreCurve<T>> {
    require_front(&l.curvature_pair()?)?;
    let c = l.curve().clone();
    let eta = l.normal().clone();
    let curve = curve_like(l.curve(), move |t| c.position(t) + eta.eval(t) * d)?;
    LegendreCurve::new(l.plane().clone(), curve, l.normal().clone())
}

/// `F(t, v) = [γ(t) − v, η(t)]` and `∂F/∂t = [γ′, η] + [γ − v, η′]`.
pub fn normal_envelope_residual<T: Real>(l: &LegendreCurve<T>, t: T, v: Vec2<T>) -> Result<(T, T)> {
    let g = l.gamma_derivative(t, 0)?;
    let g1 = l.gamma_derivative(t, 1)?;
    let e = l.eta(t);
    let e1 = l.eta_derivative(t, 1)?;
    Ok(((g - v).cross(e), g1.cross(e) + (g - v).cross(e1)))
}

/// `∂²F/∂t²` at `v = e(t)`: `[γ″, η] + [γ − e, η″]`.
///
/// Vanishes exactly at vertices.
pub fn vertex_residual<T: Real>(l: &LegendreCurve<T>, t: T) -> Result<T> {
    let cp = l.curvature_pair()?;
    let (a, k) = l.curvature_at(t)?;
    if !(k.abs() > cp.max_abs_kappa() * lit(ZERO_REL)) {
        return Err(Error::KappaVanishes { t: to_f64(t) });
    }
    let g2 = l.gamma_derivative(t, 2)?;
    let e = l.eta(t);
    let e2 = l.eta_derivative(t, 2)?;
    Ok(g2.cross(e) + (e * (a / k)).cross(e2))
}

/// Center and radius of curvature with the distance-squared diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Osculating<T> {
    pub center: Vec2<T>,
    pub radius: T,
    /// `dD/ds` for `D(s) = ‖γ(s) − center‖²`.
    pub d1: T,
    /// `d²D/ds²`.
    pub d2: T,
}

/// Osculating circle at a regular point with `κ ≠ 0`.
pub fn osculating_data<T: Real>(l: &LegendreCurve<T>, t: T) -> Result<Osculating<T>> {
    let cp = l.curvature_pair()?;
    let (a, k) = l.curvature_at(t)?;
    if !(a.abs() > cp.max_abs_alpha() * lit(ZERO_REL)) {
        return Err(Error::SingularPoint { t: to_f64(t) });
    }
    if !(k.abs() > cp.max_abs_kappa() * lit(ZERO_REL)) {
        return Err(Error::KappaVanishes { t: to_f64(t) });
    }
    let center = l.gamma(t) - l.eta(t) * (a / k);
    let radius = l.plane().norm(l.gamma(t) - center);
    let (d1, d2) = distance_squared_derivatives(l, t, center)?;
    Ok(Osculating {
        center,
        radius,
        d1,
        d2,
    })
}

/// First and second arc-length derivatives of `D(s) = ‖γ(s) − p‖²` at a
/// regular point.
pub fn distance_squared_derivatives<T: Real>(
    l: &LegendreCurve<T>,
    t: T,
    p: Vec2<T>,
) -> Result<(T, T)> {
    let (a, _) = l.curvature_at(t)?;
    if !(a.abs() > l.curvature_pair()?.max_abs_alpha() * lit(ZERO_REL)) {
        return Err(Error::SingularPoint { t: to_f64(t) });
    }
    let plane = l.plane();
    let c = l.curve();
    let (lo, hi) = c.domain();
    let dist = |s: T| {
        let n = plane.norm(c.position(s) - p);
        n * n
    };
    let h = c.fd_step();
    let dt: T = fd::derivative(dist, t, 1, h, lo, hi, c.is_closed());
    let dtt: T = fd::derivative(dist, t, 2, h, lo, hi, c.is_closed());
    // Arc length s has s′ = |α| (‖γ′‖ = |α| since ξ is unit).
    let speed = |s: T| l.curvature_at(s).map(|q| q.0.abs()).unwrap_or(T::nan());
    let s1 = a.abs();
    let s2: T = fd::derivative(speed, t, 1, h, lo, hi, c.is_closed());
    let d1 = dt / s1;
    Ok((d1, (dtt - d1 * s2) / (s1 * s1)))
}
