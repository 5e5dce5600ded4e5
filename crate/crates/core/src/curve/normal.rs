use super::{NormalField, ParamCurve, Provenance};
use crate::error::{Error, Result};
use crate::numeric::roots::bisect;
use crate::plane::NormedPlane;
use crate::scalar::{lit, to_f64, Real};
use crate::vector::Vec2;
use std::sync::Arc;

/// Grid points with `‖γ′‖ < SINGULAR_RATIO·max‖γ′‖` count as singular.
pub const SINGULAR_RATIO: f64 = 1e-7;

/// Left normal field of a regular curve, `η = b⁻¹(γ′/‖γ′‖)`.
pub fn induced_normal<T: Real>(
    plane: &Arc<NormedPlane<T>>,
    curve: &ParamCurve<T>,
) -> Result<NormalField<T>> {
    for t in curve.grid() {
        if plane.norm(curve.deriv(t, 1)) <= lit(1e-8) {
            return Err(Error::SingularPoint { t: to_f64(t) });
        }
    }
    let p = Arc::clone(plane);
    let c = curve.clone();
    Ok(NormalField::new(
        curve,
        Provenance::InducedRegular,
        move |t| {
            p.birkhoff_inverse_dir(c.deriv(t, 1))
                .unwrap_or_else(|_| Vec2::new(T::nan(), T::nan()))
        },
    ))
}

fn line_angle<T: Real>(a: Vec2<T>, b: Vec2<T>) -> T {
    a.cross(b).abs().atan2(a.dot(b).abs())
}

struct Extension<T> {
    plane: Arc<NormedPlane<T>>,
    curve: ParamCurve<T>,
    events: Vec<T>,
    anchor: T,
    threshold: T,
}

impl<T: Real> Extension<T> {
    fn sign(&self, t: T) -> T {
        let (lo, hi) = if t >= self.anchor {
            (self.anchor, t)
        } else {
            (t, self.anchor)
        };
        let k = self.events.iter().filter(|&&e| e > lo && e <= hi).count();
        if k % 2 == 0 {
            T::one()
        } else {
            -T::one()
        }
    }

    fn direction(&self, t: T) -> Vec2<T> {
        let t = self.curve.wrap(t);
        let g = self.curve.deriv(t, 1);
        if g.len() >= self.threshold {
            return g * self.sign(t);
        }
        let mut d = self.curve.deriv(t, 2);
        if d.len() < self.threshold {
            d = self.curve.deriv(t, 3);
        }
        let (t0, t1) = self.curve.domain();
        let span = t1 - t0;
        for k in 0..6 {
            let delta = span * lit(10f64.powi(k - 7));
            let s = if self.curve.is_closed() || t - delta >= t0 {
                t - delta
            } else {
                t + delta
            };
            let gs = self.curve.deriv(s, 1);
            if gs.len() >= self.threshold {
                let reference = gs * self.sign(self.curve.wrap(s));
                return if reference.dot(d) < T::zero() { -d } else { d };
            }
        }
        d
    }

    fn eval(&self, t: T) -> Vec2<T> {
        let d = self.direction(t);
        self.plane
            .birkhoff_inverse_dir(d)
            .unwrap_or_else(|_| Vec2::new(T::nan(), T::nan()))
    }
}

// Localizes a large change of tangent line between two regular samples and
// reports a corner when it does not spread out under subdivision. Directions
// come from chords just outside each sub-interval, so finite-difference
// smoothing cannot hide a genuine corner.
fn check_corner<T: Real>(curve: &ParamCurve<T>, mut a: T, mut b: T) -> Result<()> {
    let span = curve.span();
    let jump = |a: T, b: T| {
        let e = (b - a) * lit(0.25);
        let left = curve.position(a) - curve.position(a - e);
        let right = curve.position(b + e) - curve.position(b);
        line_angle(left, right)
    };
    let mut total = jump(a, b);
    let parts = 16;
    for _ in 0..64 {
        let h = (b - a) / lit(parts as f64);
        let mut best = (T::zero(), 0usize);
        for k in 0..parts {
            let s = a + h * lit(k as f64);
            let j = jump(s, s + h);
            if j > best.0 {
                best = (j, k);
            }
        }
        if best.0 < total * lit(0.5) {
            return Ok(());
        }
        a = a + h * lit(best.1 as f64);
        b = a + h;
        total = best.0;
        if b - a < span * lit(1e-11) {
            if total > lit(1e-4) {
                return Err(Error::LimitsDisagree {
                    t: to_f64((a + b) * lit(0.5)),
                    angle: to_f64(total),
                });
            }
            return Ok(());
        }
    }
    Ok(())
}

/// Normal field of a curve with isolated singular points.
///
/// Tangent reversals between regular samples mark singular points, where the
/// sign of the tangent is flipped so that `η` continues smoothly; at and near
/// a singular point the line direction is taken from `γ″` (or `γ‴`). The sign
/// is anchored to the left-normal convention at the first regular sample at or
/// after the middle of the grid.
pub fn extend_normal<T: Real>(
    plane: &Arc<NormedPlane<T>>,
    curve: &ParamCurve<T>,
) -> Result<NormalField<T>> {
    let ts = curve.grid();
    let n = ts.len();
    let closed = curve.is_closed();
    let d: Vec<Vec2<T>> = ts.iter().map(|&t| curve.deriv(t, 1)).collect();
    let max = d.iter().fold(T::zero(), |m, v| m.max(v.len()));
    if !(max > T::zero()) || !max.is_finite() {
        return Err(Error::SingularPoint { t: to_f64(ts[0]) });
    }
    let threshold = max * lit(SINGULAR_RATIO);
    let singular: Vec<bool> = d.iter().map(|v| v.len() < threshold).collect();
    let regular: Vec<usize> = (0..n).filter(|&i| !singular[i]).collect();
    if regular.is_empty() {
        return Err(Error::SingularPoint { t: to_f64(ts[0]) });
    }

    let span = curve.span();
    let step = curve.grid_step();
    let delta = span * lit(1e-6);
    let mut events = Vec::new();
    let pairs = if closed {
        regular.len()
    } else {
        regular.len() - 1
    };
    for k in 0..pairs {
        let i = regular[k];
        let j = regular[(k + 1) % regular.len()];
        let gap = if closed { (j + n - i) % n } else { j - i };
        let gap = if gap == 0 { n } else { gap };
        if gap > 3 {
            return Err(Error::SingularPoint {
                t: to_f64(ts[(i + 1) % n]),
            });
        }
        let a = ts[i];
        let b = a + step * lit(gap as f64);
        if d[i].dot(d[j]) < T::zero() {
            let t_star = if gap > 1 {
                let inner = (1..gap).map(|g| (i + g) % n);
                let m = inner
                    .min_by(|&p, &q| d[p].len().partial_cmp(&d[q].len()).unwrap())
                    .unwrap();
                a + step * lit(((m + n - i) % n) as f64)
            } else {
                let di = d[i];
                bisect(|t| curve.deriv(t, 1).dot(di), a, b, span * lit(1e-15))
            };
            let left = curve.deriv(t_star - delta, 1);
            let right = curve.deriv(t_star + delta, 1);
            let ang = line_angle(left, right);
            if ang > lit(1e-4) {
                return Err(Error::LimitsDisagree {
                    t: to_f64(t_star),
                    angle: to_f64(ang),
                });
            }
            events.push(curve.wrap(t_star));
        } else if line_angle(d[i], d[j]) > lit(0.1) {
            check_corner(curve, a, b)?;
        }
    }
    events.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if closed && events.len() % 2 == 1 {
        return Err(Error::LimitsDisagree {
            t: to_f64(events[0]),
            angle: to_f64(T::PI()),
        });
    }
    let anchor_idx = regular
        .iter()
        .copied()
        .find(|&i| i >= n / 2)
        .unwrap_or(regular[regular.len() - 1]);
    let provenance = if events.is_empty() && regular.len() == n {
        Provenance::InducedRegular
    } else {
        Provenance::ExtendedThroughSingularities
    };
    let ext = Extension {
        plane: Arc::clone(plane),
        curve: curve.clone(),
        events,
        anchor: ts[anchor_idx],
        threshold,
    };
    Ok(NormalField::new(curve, provenance, move |t| ext.eval(t)))
}

/// Largest relative violation of `η ⊣ γ′` on the grid,
/// `|[γ′, b(η)]| / (‖γ′‖ + ε)`.
///
/// Grid points below the singular-point threshold are skipped: there `γ′`
/// carries no direction and the quotient only measures roundoff.
pub fn legendre_residual<T: Real>(
    plane: &NormedPlane<T>,
    curve: &ParamCurve<T>,
    normal: &NormalField<T>,
) -> T {
    legendre_residual_gated(plane, curve, normal, lit(SINGULAR_RATIO))
}

/// [`legendre_residual`] with a caller-chosen singular-point ratio, for
/// curves whose positions already carry finite-difference noise.
pub fn legendre_residual_gated<T: Real>(
    plane: &NormedPlane<T>,
    curve: &ParamCurve<T>,
    normal: &NormalField<T>,
    ratio: T,
) -> T {
    let ts = curve.grid();
    let d: Vec<Vec2<T>> = ts.iter().map(|&t| curve.deriv(t, 1)).collect();
    let norms: Vec<T> = d.iter().map(|&v| plane.norm(v)).collect();
    let max = norms.iter().fold(T::zero(), |m, &v| m.max(v));
    let size = ts
        .iter()
        .fold(T::one(), |m, &t| m.max(curve.position(t).len()));
    // A curve that is constant up to roundoff has no direction to test.
    let gate = (max * ratio).max(size / curve.span() * lit(1e-8));
    let eps: T = lit(1e-12);
    let mut worst = T::zero();
    for ((t, g), ng) in ts.iter().zip(&d).zip(&norms) {
        if *ng < gate {
            continue;
        }
        let eta = normal.eval(*t);
        let r = match plane.birkhoff(eta) {
            Ok(xi) => g.cross(xi).abs() / (*ng + eps),
            Err(_) => T::infinity(),
        };
        if !(r <= worst) {
            worst = if r.is_nan() { T::infinity() } else { r };
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::NormSpec;
    use std::f64::consts::TAU;

    fn euclid() -> Arc<NormedPlane<f64>> {
        Arc::new(NormedPlane::build(NormSpec::euclidean()).unwrap())
    }

    #[test]
    fn circle_induced_is_radial() {
        let p = euclid();
        let c = ParamCurve::new((0.0, TAU), true, |t: f64| Vec2::new(t.cos(), t.sin())).unwrap();
        let eta = induced_normal(&p, &c).unwrap();
        for &t in &[0.0, 1.0, 2.5, 5.0] {
            assert!((eta.eval(t) - Vec2::new(t.cos(), t.sin())).len() < 1e-9);
        }
        assert!(legendre_residual(&p, &c, &eta) < 1e-8);
        let tangent = NormalField::new(&c, Provenance::UserSupplied, |t: f64| {
            Vec2::new(-t.sin(), t.cos())
        });
        assert!((legendre_residual(&p, &c, &tangent) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cusp_needs_extension() {
        let p = euclid();
        let c = ParamCurve::new((-1.0, 1.0), false, |t: f64| Vec2::new(t * t, t * t * t)).unwrap();
        let e = induced_normal(&p, &c.clone().with_samples(2049)).unwrap_err();
        assert!(matches!(e, Error::SingularPoint { .. }));
        let eta = extend_normal(&p, &c).unwrap();
        for &t in &[-0.9f64, -0.3, -1e-4, 0.0, 1e-4, 0.5, 1.0] {
            let want = Vec2::new(3.0 * t, -2.0) / (4.0 + 9.0 * t * t).sqrt();
            assert!((eta.eval(t) - want).len() < 1e-6, "t = {t}");
        }
        assert!(legendre_residual(&p, &c, &eta) < 1e-6);
    }

    #[test]
    fn astroid_extension() {
        let p = euclid();
        let c = ParamCurve::new((0.0, TAU), true, |t: f64| {
            Vec2::new(t.cos().powi(3), t.sin().powi(3))
        })
        .unwrap();
        let eta = extend_normal(&p, &c).unwrap();
        assert_eq!(eta.provenance(), Provenance::ExtendedThroughSingularities);
        for k in 0..97 {
            let t = TAU * k as f64 / 96.0;
            let want = Vec2::new(t.sin(), t.cos());
            assert!((eta.eval(t) - want).len() < 1e-6, "t = {t}");
        }
        assert!(legendre_residual(&p, &c, &eta) < 1e-6);
    }

    #[test]
    fn corner_is_rejected() {
        let p = euclid();
        let c = ParamCurve::new((-1.0, 1.0), false, |t: f64| Vec2::new(t.abs(), t)).unwrap();
        let e = extend_normal(&p, &c).unwrap_err();
        assert!(matches!(e, Error::LimitsDisagree { .. }), "{e:?}");
    }
}
