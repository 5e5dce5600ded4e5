use super::curve_like;
use crate::analysis::LegendreCurve;
use crate::curve::{NormalField, ParamCurve, Provenance};
use crate::error::{Error, Result};
use crate::numeric::crossings::{scan, touches};
use crate::numeric::fd;
use crate::numeric::roots::golden_min;
use crate::scalar::{lit, to_f64, Real};
use crate::vector::Vec2;
use std::sync::Arc;

/// Distance below which the pedal point counts as lying on the curve.
const ON_CURVE: f64 = 1e-6;
/// Parameter offset, relative to the span, of the one-sided limit used when
/// the pedal point meets `p`.
const LIMIT_STEP: f64 = 1e-5;

/// Pedal curve `γ_p` of a Legendre curve with respect to a point `p`.
#[derive(Clone, Debug)]
pub struct PedalResult<T> {
    pub p: Vec2<T>,
    pub t: Vec<T>,
    pub curve: ParamCurve<T>,
    /// `ξ` normalized in the anti-norm.
    pub xi_a: Vec<Vec2<T>>,
    /// Front field `ζ` with `γ_p′ = κζ`.
    pub zeta: Vec<Vec2<T>>,
    /// `b⁻¹(ζ/‖ζ‖)`, absent where `ζ` vanishes.
    pub nu: Vec<Option<Vec2<T>>>,
    /// Zeros of `κ`, which are the singular points of `γ_p`.
    pub singular: Vec<T>,
    /// Smallest distance from `p` to `γ`.
    pub min_distance: T,
    /// `p` lies on `γ`; frontality of `γ_p` is then not claimed.
    pub p_on_curve: bool,
    /// `(γ_p, ν_p)` as a Legendre curve when `p` is off the curve.
    pub frontal: Option<LegendreCurve<T>>,
}

fn pedal_point<T: Real>(l: &LegendreCurve<T>, p: Vec2<T>, t: T) -> Vec2<T> {
    let g = l.gamma(t);
    let eta = l.eta(t);
    let xi = l.xi(t);
    // [η, ξ] is the anti-norm of the unit vector ξ.
    g + xi * ((g - p).cross(eta) / eta.cross(xi))
}

fn zeta_at<T: Real>(l: &LegendreCurve<T>, p: Vec2<T>, t: T) -> Vec2<T> {
    let plane = l.plane();
    let g = l.gamma(t) - p;
    let eta = l.eta(t);
    let xi = l.xi(t);
    let bxi = plane.birkhoff_dir(xi);
    let ex = eta.cross(xi);
    let rho = plane.rho_theta(eta.angle());
    let a = g.cross(xi) / ex;
    eta * (rho * (g.cross(bxi) - a * eta.cross(bxi)) / ex) + xi * a
}

/// `γ_p′ = κζ` from the frame of `γ`.
pub fn pedal_derivative<T: Real>(l: &LegendreCurve<T>, p: Vec2<T>, t: T) -> Result<Vec2<T>> {
    let (_, k) = l.curvature_at(t)?;
    Ok(zeta_at(l, p, t) * k)
}

fn distance_to_curve<T: Real>(l: &LegendreCurve<T>, p: Vec2<T>) -> T {
    let plane = l.plane();
    let ts = l.grid();
    let d: Vec<T> = ts.iter().map(|&t| plane.norm(l.gamma(t) - p)).collect();
    let (i, &best) = d
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty grid");
    let h = l.curve().grid_step();
    let (lo, hi) = l.curve().domain();
    let (a, b) = if l.curve().is_closed() {
        (ts[i] - h, ts[i] + h)
    } else {
        ((ts[i] - h).max(lo), (ts[i] + h).min(hi))
    };
    let (_, m) = golden_min(|t| plane.norm(l.gamma(t) - p), a, b, 120);
    best.min(m)
}

/// Pedal curve `γ + [γ − p, η]ξ_a`, its front field and singular set.
pub fn pedal<T: Real>(l: &LegendreCurve<T>, p: Vec2<T>) -> Result<PedalResult<T>> {
    let plane = Arc::clone(l.plane());
    let src = l.clone();
    let curve = curve_like(l.curve(), move |t| pedal_point(&src, p, t))?;
    let t = l.grid();
    let xi_a: Vec<Vec2<T>> = t
        .iter()
        .map(|&s| l.xi(s) / l.eta(s).cross(l.xi(s)))
        .collect();
    let zeta: Vec<Vec2<T>> = t.iter().map(|&s| zeta_at(l, p, s)).collect();
    let zmax = zeta.iter().fold(T::zero(), |m, z| m.max(z.len()));
    let nu: Vec<Option<Vec2<T>>> = zeta
        .iter()
        .map(|&z| {
            if z.len() > zmax * lit(1e-10) {
                plane.birkhoff_inverse_dir(z).ok()
            } else {
                None
            }
        })
        .collect();

    let cp = l.curvature_pair()?;
    let kmax = cp.max_abs_kappa();
    let sk = cp.sampled(cp.kappa.clone());
    let sc = scan(&sk, kmax * lit(1e-10) + T::min_positive_value(), None);
    let mut singular: Vec<T> = sc.crossings.iter().map(|c| c.t).collect();
    if !sc.all_small {
        singular.extend(touches(&sk, kmax * lit(1e-6), kmax * lit(1e-9), None));
    }
    singular.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));

    let min_distance = distance_to_curve(l, p);
    let p_on_curve = !(min_distance > lit(ON_CURVE));
    let frontal = if p_on_curve {
        None
    } else {
        let src = l.clone();
        let p2 = Arc::clone(&plane);
        let normal = NormalField::new(&curve, Provenance::Derived, move |s| {
            p2.birkhoff_inverse_dir(zeta_at(&src, p, s))
                .unwrap_or_else(|_| Vec2::new(T::nan(), T::nan()))
        });
        Some(LegendreCurve::new(
            Arc::clone(&plane),
            curve.clone(),
            normal,
        )?)
    };
    Ok(PedalResult {
        p,
        t,
        curve,
        xi_a,
        zeta,
        nu,
        singular,
        min_distance,
        p_on_curve,
        frontal,
    })
}

/// `F(t, v) = [γ_p(t) − v, b(γ_p(t) − p)]` and `∂F/∂t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PedalEnvelope<T> {
    pub f: T,
    pub df: T,
    /// A one-sided limit replaced the line direction at or near `t`.
    pub low_confidence: bool,
}

/// Envelope function whose zero set in `(t, v)` recovers `γ` from its pedal.
pub fn pedal_envelope_residual<T: Real>(
    l: &LegendreCurve<T>,
    p: Vec2<T>,
    t: T,
    v: Vec2<T>,
) -> Result<PedalEnvelope<T>> {
    l.curve().check(t)?;
    let plane = l.plane();
    let (lo, hi) = l.curve().domain();
    let closed = l.curve().is_closed();
    let h = l.curve().span() * lit(LIMIT_STEP);
    let scale = T::one().max(p.len()).max(l.gamma(t).len());
    let tiny = scale * lit(1e-12);
    let line = |s: T| -> Option<(Vec2<T>, bool)> {
        let w = pedal_point(l, p, s) - p;
        if w.len() > tiny {
            return Some((plane.birkhoff_dir(w), false));
        }
        let s2 = if closed || s + h <= hi { s + h } else { s - h };
        let w = pedal_point(l, p, s2) - p;
        (w.len() > tiny).then(|| (plane.birkhoff_dir(w), true))
    };
    let (dir, low) = line(t).ok_or(Error::DegenerateLine { t: to_f64(t) })?;
    let f = (pedal_point(l, p, t) - v).cross(dir);
    let mut low_confidence = low;
    let eval = |s: T| match line(s) {
        Some((d, _)) => (pedal_point(l, p, s) - v).cross(d),
        None => T::nan(),
    };
    let df: T = fd::derivative(eval, t, 1, l.curve().fd_step(), lo, hi, closed);
    if !df.is_finite() {
        return Err(Error::DegenerateLine { t: to_f64(t) });
    }
    // Flag stencils that pass close to the degenerate point.
    let r = l.curve().fd_step() * lit(4.0);
    for s in [t - r, t + r] {
        if line(s).map_or(true, |x| x.1) {
            low_confidence = true;
        }
    }
    Ok(PedalEnvelope {
        f,
        df,
        low_confidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{NormSpec, NormedPlane};
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn circle(spec: NormSpec<f64>) -> LegendreCurve<f64> {
        let plane = Arc::new(NormedPlane::build(spec).unwrap());
        let p2 = Arc::clone(&plane);
        let c = ParamCurve::new((0.0, TAU), true, move |t| p2.boundary(t)).unwrap();
        let p3 = Arc::clone(&plane);
        let eta = NormalField::new(&c, Provenance::Analytic, move |t| p3.boundary(t));
        LegendreCurve::new(plane, c, eta).unwrap()
    }

    #[test]
    fn cardioid() {
        let l = circle(NormSpec::euclidean());
        let r = pedal(&l, Vec2::new(1.0, 0.0)).unwrap();
        assert!(r.curve.position(FRAC_PI_2).dist(Vec2::new(1.0, 1.0)) < 1e-12);
        assert!(r.curve.position(PI).dist(Vec2::new(-1.0, 0.0)) < 1e-12);
        assert!(r.p_on_curve && r.frontal.is_none());
        assert!(r.singular.is_empty());
        for t in [0.3, 1.7, 4.0] {
            let fd = r.curve.derivative(t, 1).unwrap();
            assert!(fd.dist(pedal_derivative(&l, r.p, t).unwrap()) < 1e-8);
        }
    }

    #[test]
    fn origin_pedal_of_circle_is_circle() {
        let l = circle(NormSpec::euclidean());
        let r = pedal(&l, Vec2::zero()).unwrap();
        for &t in r.t.iter().step_by(64) {
            assert!(r.curve.position(t).dist(l.gamma(t)) < 1e-14);
        }
        assert!(r.frontal.is_some());
    }

    #[test]
    fn envelope_recovers_curve() {
        let l = circle(NormSpec::euclidean());
        let p = Vec2::new(1.0, 0.0);
        for t in [0.4, 2.0, 5.0] {
            let e = pedal_envelope_residual(&l, p, t, l.gamma(t)).unwrap();
            assert!(e.f.abs() < 1e-6 && e.df.abs() < 1e-6);
            let off = l.gamma(t) + l.eta(t) * 0.05;
            let e = pedal_envelope_residual(&l, p, t, off).unwrap();
            assert!(e.f.abs().max(e.df.abs()) > 1e-3);
        }
    }

    #[test]
    fn l3_pedal_birkhoff_orthogonal_to_xi() {
        let l = circle(NormSpec::lp(3.0));
        let p = Vec2::new(0.0, 1.0);
        let r = pedal(&l, p).unwrap();
        let plane = l.plane();
        for (i, &t) in r.t.iter().enumerate().step_by(53) {
            let w = r.curve.position(t) - p;
            if plane.norm(w) > 1e-6 {
                assert!(plane.is_birkhoff_orthogonal(w, l.xi(t), 1e-5).unwrap());
            }
            assert!((plane.antinorm(r.xi_a[i]) - 1.0).abs() < 1e-8);
        }
    }
}
