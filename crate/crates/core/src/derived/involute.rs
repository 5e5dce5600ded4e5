use super::require_kappa;
use crate::analysis::LegendreCurve;
use crate::curve::{NormalField, ParamCurve, Provenance};
use crate::error::{Error, Result};
use crate::numeric::interp::HermiteTable;
use crate::numeric::quad::gauss3;
use crate::scalar::{lit, to_f64, Real};
use crate::vector::Vec2;
use std::sync::Arc;

/// `ρ(η)` below which the involute is refused.
const RHO_GATE: f64 = 1e-6;
/// Minimum number of integration steps.
const MIN_STEPS: usize = 4096;

/// Involute `(σ, ξ)` with its predicted curvature pair.
#[derive(Clone, Debug)]
pub struct Involute<T> {
    pub legendre: LegendreCurve<T>,
    /// Parameter where the integrals start.
    pub anchor: T,
    /// The source curve was closed; the involute generally is not and is
    /// returned on the open interval.
    pub opened: bool,
    pub t: Vec<T>,
    /// Predicted `κρ(η)(d − ∫α)`.
    pub alpha: Vec<T>,
    /// Predicted `κρ(η)`.
    pub kappa: Vec<T>,
}

struct Integrand<'a, T> {
    l: &'a LegendreCurve<T>,
}

impl<'a, T: Real> Integrand<'a, T> {
    fn pair(&self, t: T) -> Result<(T, T)> {
        self.l.curvature_at(t)
    }

    /// `ξ′ = κ ρ(η) b(ξ)`.
    fn xi_prime(&self, t: T, kappa: T) -> Result<Vec2<T>> {
        let plane = self.l.plane();
        let eta = self.l.eta(t);
        let rho = plane.rho_theta(eta.angle());
        let xi = self.l.xi(t);
        Ok(plane.birkhoff(xi)? * (kappa * rho))
    }
}

/// Steps from `t0` to `t1` of `y′ = −A(t)ξ′(t)` with `A = ∫α` tabulated by
/// three-point Gauss on half steps. Returns nodes, `y`, `y′` and `A`.
#[allow(clippy::type_complexity)]
fn sweep<T: Real>(
    f: &Integrand<'_, T>,
    t0: T,
    t1: T,
    n: usize,
) -> Result<(Vec<T>, Vec<Vec2<T>>, Vec<Vec2<T>>, Vec<T>)> {
    let alpha = |t: T| f.pair(t).map(|p| p.0).unwrap_or(T::nan());
    let rhs = |t: T, a: T| -> Result<Vec2<T>> {
        let (_, k) = f.pair(t)?;
        Ok(f.xi_prime(t, k)? * (-a))
    };
    let mut ts = vec![t0];
    let mut ys = vec![Vec2::zero()];
    let mut ds = vec![rhs(t0, T::zero())?];
    let mut area = vec![T::zero()];
    if n == 0 {
        return Ok((ts, ys, ds, area));
    }
    let h = (t1 - t0) / lit(n as f64);
    let six: T = lit(6.0);
    for i in 0..n {
        let a = ts[i];
        let b = if i + 1 == n {
            t1
        } else {
            t0 + h * lit((i + 1) as f64)
        };
        let m = (a + b) * lit(0.5);
        let am = area[i] + gauss3(alpha, a, m);
        let ab = am + gauss3(alpha, m, b);
        let fm = rhs(m, am)?;
        let fb = rhs(b, ab)?;
        // The right-hand side does not depend on y, so the fourth-order
        // Runge-Kutta step reduces to Simpson's rule.
        let y = ys[i] + (ds[i] + fm * lit(4.0) + fb) * ((b - a) / six);
        ts.push(b);
        ys.push(y);
        ds.push(fb);
        area.push(ab);
    }
    Ok((ts, ys, ds, area))
}

/// Involute `σ(t) = γ(t₀) − ∫(∫α)ξ′ + dξ(t)` with normal `ξ`, integrals
/// anchored at `t₀ = 0` clamped to the domain.
pub fn involute<T: Real>(l: &LegendreCurve<T>, d: T) -> Result<Involute<T>> {
    let cp = l.curvature_pair()?;
    require_kappa(&cp)?;
    let plane = Arc::clone(l.plane());
    let gate: T = lit(RHO_GATE);
    for &t in &cp.t {
        if !(plane.rho_theta(l.eta(t).angle()) > gate) {
            return Err(Error::RhoDegenerate { t: to_f64(t) });
        }
    }
    let (a, b) = l.curve().domain();
    let anchor = T::zero().max(a).min(b);
    let span = b - a;
    let m = l.curve().samples().max(MIN_STEPS);
    let n_fwd = ((b - anchor) / span * lit(m as f64))
        .round()
        .to_usize()
        .unwrap_or(m);
    let n_fwd = if b > anchor { n_fwd.max(1) } else { 0 };
    let n_bwd = m.saturating_sub(n_fwd);
    let n_bwd = if anchor > a { n_bwd.max(1) } else { 0 };
    let f = Integrand { l };
    let fwd = sweep(&f, anchor, b, n_fwd)?;
    let bwd = sweep(&f, anchor, a, n_bwd)?;
    let mut ts = Vec::new();
    let mut ys = Vec::new();
    let mut ds = Vec::new();
    let mut area = Vec::new();
    for i in (1..bwd.0.len()).rev() {
        ts.push(bwd.0[i]);
        ys.push(bwd.1[i]);
        ds.push(bwd.2[i]);
        area.push(bwd.3[i]);
    }
    ts.extend_from_slice(&fwd.0);
    ys.extend_from_slice(&fwd.1);
    ds.extend_from_slice(&fwd.2);
    area.extend_from_slice(&fwd.3);
    let area_table = HermiteTable::new(
        ts.clone(),
        area,
        ts.iter()
            .map(|&t| l.curvature_at(t).map(|p| p.0).unwrap_or(T::nan()))
            .collect(),
    );
    let table = HermiteTable::new(ts, ys, ds);

    let opened = l.curve().is_closed();
    let samples = l.curve().samples() + usize::from(opened);
    let base = l.gamma(anchor);
    let src = l.clone();
    let curve = ParamCurve::new((a, b), false, move |t| base + table.eval(t) + src.xi(t) * d)?
        .with_samples(samples);
    let src = l.clone();
    let normal = NormalField::new(&curve, Provenance::Derived, move |t| src.xi(t));
    let legendre = LegendreCurve::new(Arc::clone(&plane), curve, normal)?;

    let t = legendre.grid();
    let mut alpha = Vec::with_capacity(t.len());
    let mut kappa = Vec::with_capacity(t.len());
    for &s in &t {
        let (_, k) = l.curvature_at(s)?;
        let kr = k * plane.rho_theta(l.eta(s).angle());
        alpha.push(kr * (d - area_table.eval(s)));
        kappa.push(kr);
    }
    Ok(Involute {
        legendre,
        anchor,
        opened,
        t,
        alpha,
        kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::evolute;
    use crate::plane::{NormSpec, NormedPlane};
    use std::f64::consts::TAU;

    #[test]
    fn circle_involute_matches_closed_form() {
        let p = Arc::new(NormedPlane::build(NormSpec::euclidean()).unwrap());
        let c = ParamCurve::new((0.0, TAU), true, |t: f64| Vec2::new(t.cos(), t.sin())).unwrap();
        let l = LegendreCurve::from_curve(p, c).unwrap();
        for d in [0.0, 0.5, -1.0] {
            let inv = involute(&l, d).unwrap();
            assert!(inv.opened);
            for &t in inv.t.iter().step_by(97) {
                // σ = γ + (d − t)ξ for the unit circle.
                let want = Vec2::new(t.cos(), t.sin()) + Vec2::new(-t.sin(), t.cos()) * (d - t);
                assert!(inv.legendre.gamma(t).dist(want) < 1e-9, "{d} {t}");
            }
            let ev = evolute(&inv.legendre).unwrap();
            for &t in inv.t.iter().step_by(31) {
                assert!(
                    ev.point(t).dist(Vec2::new(t.cos(), t.sin())) < 1e-4,
                    "{d} {t}"
                );
            }
        }
    }
}
