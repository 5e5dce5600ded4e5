//! Curvature pairs, singularities, Maslov index, contact and norm transfer.

mod contact;
mod singular;

pub use contact::{contact_implies_curvature_match, contact_order, CurvatureMatch, OrderResidual};
pub use singular::{
    lateral_tangent_type, maslov_index, projective_curvature_map, singularity_report, Counts, Cusp,
    CuspType, Inflection, InflectionType, MaslovIndex, ProjectiveCurvatureMap, SingularityReport,
    Vertex,
};

use crate::curve::{
    extend_normal, legendre_residual_gated, NormalField, ParamCurve, Provenance, SINGULAR_RATIO,
};
use crate::error::{Error, Result};
use crate::numeric::fd::grid_derivative;
use crate::numeric::interp::Sampled;
use crate::plane::{transfer_unit, NormedPlane};
use crate::scalar::{lit, to_f64, Real};
use crate::vector::Vec2;
use std::sync::Arc;

/// Residual below which a pair is accepted as a Legendre curve.
pub const LEGENDRE_TOL: f64 = 1e-5;

/// A Legendre curve `(γ, η)` in a normed plane.
#[derive(Clone, Debug)]
pub struct LegendreCurve<T> {
    plane: Arc<NormedPlane<T>>,
    curve: ParamCurve<T>,
    normal: NormalField<T>,
    residual: T,
    xi: Vec<Vec2<T>>,
}

impl<T: Real> LegendreCurve<T> {
    /// Validates `(γ, η)` against the default residual tolerance.
    pub fn new(
        plane: Arc<NormedPlane<T>>,
        curve: ParamCurve<T>,
        normal: NormalField<T>,
    ) -> Result<Self> {
        Self::with_tolerance(plane, curve, normal, lit(LEGENDRE_TOL))
    }

    /// Validates `(γ, η)` with a caller-chosen residual tolerance.
    pub fn with_tolerance(
        plane: Arc<NormedPlane<T>>,
        curve: ParamCurve<T>,
        normal: NormalField<T>,
        tolerance: T,
    ) -> Result<Self> {
        Self::with_gate(plane, curve, normal, tolerance, lit(SINGULAR_RATIO))
    }

    /// Like [`Self::with_tolerance`], also choosing the speed ratio below
    /// which grid points are treated as singular by the residual.
    pub fn with_gate(
        plane: Arc<NormedPlane<T>>,
        curve: ParamCurve<T>,
        normal: NormalField<T>,
        tolerance: T,
        singular_ratio: T,
    ) -> Result<Self> {
        let mut xi = Vec::with_capacity(curve.samples());
        for t in curve.grid() {
            let eta = normal.eval(t);
            let ne = plane.norm(eta);
            if !((ne - T::one()).abs() <= lit(1e-8)) {
                return Err(Error::NotUnit { norm: to_f64(ne) });
            }
            xi.push(plane.birkhoff(eta)?);
        }
        let residual = legendre_residual_gated(&plane, &curve, &normal, singular_ratio);
        if !(residual < tolerance) {
            return Err(Error::NotLegendre {
                residual: to_f64(residual),
            });
        }
        Ok(Self {
            plane,
            curve,
            normal,
            residual,
            xi,
        })
    }

    /// Frontal built from a curve alone, with `η` extended through isolated
    /// singular points.
    pub fn from_curve(plane: Arc<NormedPlane<T>>, curve: ParamCurve<T>) -> Result<Self> {
        let normal = extend_normal(&plane, &curve)?;
        Self::new(plane, curve, normal)
    }

    pub fn plane(&self) -> &Arc<NormedPlane<T>> {
        &self.plane
    }

    pub fn curve(&self) -> &ParamCurve<T> {
        &self.curve
    }

    pub fn normal(&self) -> &NormalField<T> {
        &self.normal
    }

    pub fn residual(&self) -> T {
        self.residual
    }

    /// `ξ = b(η)` on the grid.
    pub fn xi_samples(&self) -> &[Vec2<T>] {
        &self.xi
    }

    pub fn grid(&self) -> Vec<T> {
        self.curve.grid()
    }

    pub fn gamma(&self, t: T) -> Vec2<T> {
        self.curve.position(t)
    }

    pub fn eta(&self, t: T) -> Vec2<T> {
        self.normal.eval(t)
    }

    pub fn xi(&self, t: T) -> Vec2<T> {
        self.plane.birkhoff_dir(self.normal.eval(t))
    }

    pub fn gamma_derivative(&self, t: T, order: usize) -> Result<Vec2<T>> {
        self.curve.derivative(t, order)
    }

    pub fn eta_derivative(&self, t: T, order: usize) -> Result<Vec2<T>> {
        self.curve.check(t)?;
        Ok(if order == 0 {
            self.normal.eval(t)
        } else {
            self.normal.derivative(t, order)
        })
    }

    /// `(α, κ)` at a single parameter.
    pub fn curvature_at(&self, t: T) -> Result<(T, T)> {
        self.curve.check(t)?;
        let eta = self.normal.eval(t);
        let xi = self.plane.birkhoff(eta)?;
        let d = eta.cross(xi);
        if !(d >= lit(1e-10)) {
            return Err(Error::DegenerateFrame { t: to_f64(t) });
        }
        let g = self.curve.deriv(t, 1);
        let e1 = self.normal.derivative(t, 1);
        Ok((eta.cross(g) / d, eta.cross(e1) / d))
    }

    /// Curvature pair sampled on the grid.
    pub fn curvature_pair(&self) -> Result<CurvaturePair<T>> {
        let t = self.grid();
        let mut alpha = Vec::with_capacity(t.len());
        let mut kappa = Vec::with_capacity(t.len());
        for &ti in &t {
            let (a, k) = self.curvature_at(ti)?;
            alpha.push(a);
            kappa.push(k);
        }
        Ok(CurvaturePair {
            t,
            alpha,
            kappa,
            closed: self.curve.is_closed(),
            step: self.curve.grid_step(),
            span: self.curve.span(),
        })
    }

    /// Largest grid values of `‖γ′ − αξ‖/max(1,|α|)` and `‖η′ − κξ‖/max(1,|κ|)`.
    pub fn frenet_residuals(&self, cp: &CurvaturePair<T>) -> (T, T) {
        let mut rg = T::zero();
        let mut re = T::zero();
        for (i, &t) in cp.t.iter().enumerate() {
            let xi = self.xi(t);
            let g = self.curve.deriv(t, 1);
            let e = self.normal.derivative(t, 1);
            let (a, k) = (cp.alpha[i], cp.kappa[i]);
            rg = rg.max((g - xi * a).len() / a.abs().max(T::one()));
            re = re.max((e - xi * k).len() / k.abs().max(T::one()));
        }
        (rg, re)
    }
}

/// Sampled curvature pair `(α, κ)` with `γ′ = αξ` and `η′ = κξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvaturePair<T> {
    pub t: Vec<T>,
    pub alpha: Vec<T>,
    pub kappa: Vec<T>,
    pub closed: bool,
    pub step: T,
    pub span: T,
}

impl<T: Real> CurvaturePair<T> {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub(crate) fn sampled(&self, v: Vec<T>) -> Sampled<T> {
        Sampled::new(self.t[0], self.step, self.closed, v)
    }

    pub fn alpha_prime(&self) -> Vec<T> {
        grid_derivative(&self.alpha, self.step, self.closed)
    }

    pub fn kappa_prime(&self) -> Vec<T> {
        grid_derivative(&self.kappa, self.step, self.closed)
    }

    pub fn max_abs_alpha(&self) -> T {
        max_abs(&self.alpha)
    }

    pub fn max_abs_kappa(&self) -> T {
        max_abs(&self.kappa)
    }
}

pub(crate) fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// Standard deviation of the sample noise, estimated from sixth differences.
///
/// For smooth data the sixth difference is of order `h⁶f⁽⁶⁾` and negligible;
/// for independent noise of deviation `σ` its RMS is `σ√924`.
pub(crate) fn noise_sigma<T: Real>(v: &[T], closed: bool) -> T {
    const C: [f64; 7] = [1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0];
    let n = v.len();
    if n < 7 {
        return T::zero();
    }
    let count = if closed { n } else { n - 6 };
    let mut sum = T::zero();
    for i in 0..count {
        let d = (0..7).fold(T::zero(), |acc, k| acc + v[(i + k) % n] * lit(C[k]));
        sum = sum + d * d;
    }
    (sum / lit(count as f64 * 924.0)).sqrt()
}

/// Circular curvature `k = κ/α`, masked where `|α| ≤ 1e-6·max|α|`.
pub fn circular_curvature<T: Real>(cp: &CurvaturePair<T>) -> Vec<Option<T>> {
    let gate = cp.max_abs_alpha() * lit(1e-6);
    cp.alpha
        .iter()
        .zip(&cp.kappa)
        .map(|(&a, &k)| if a.abs() > gate { Some(k / a) } else { None })
        .collect()
}

/// `(γ, T∘η)` in another plane, `T` being the Birkhoff transfer map.
pub fn transfer_legendre<T: Real>(
    l: &LegendreCurve<T>,
    target: &Arc<NormedPlane<T>>,
) -> Result<LegendreCurve<T>> {
    let from = Arc::clone(&l.plane);
    let to = Arc::clone(target);
    let normal = l.normal.clone();
    let field = NormalField::new(&l.curve, Provenance::UserSupplied, move |t| {
        let eta = normal.eval(t);
        let unit = eta / from.norm(eta);
        transfer_unit(&from, &to, unit).unwrap_or_else(|_| Vec2::new(T::nan(), T::nan()))
    });
    LegendreCurve::new(Arc::clone(target), l.curve.clone(), field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::NormSpec;
    use std::f64::consts::TAU;

    #[test]
    fn circle_pair_is_one() {
        let p = Arc::new(NormedPlane::build(NormSpec::euclidean()).unwrap());
        let c = ParamCurve::new((0.0, TAU), true, |t: f64| Vec2::new(t.cos(), t.sin())).unwrap();
        let l = LegendreCurve::from_curve(p, c).unwrap();
        let cp = l.curvature_pair().unwrap();
        for i in 0..cp.len() {
            assert!((cp.alpha[i] - 1.0).abs() < 1e-7);
            assert!((cp.kappa[i] - 1.0).abs() < 1e-7);
        }
        let (rg, re) = l.frenet_residuals(&cp);
        assert!(rg < 1e-8 && re < 1e-8);
    }
}
