//! Smooth, strictly convex normed planes and their norm-derived primitives.

mod radial;

use crate::error::{Error, Result};
use crate::numeric::quad::gauss8;
use crate::numeric::roots::{golden_min, safe_newton};
use crate::scalar::{lit, rem_pos, to_f64, tol, wrap_pi, Real};
use crate::vector::Vec2;
use radial::Radial;
use serde::{Deserialize, Serialize};

/// Default number of unit-circle table nodes.
pub const DEFAULT_TABLE_SIZE: usize = 4096;

/// Family of the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormKind<T> {
    Euclidean,
    /// `l_p` norm, `1 < p < ∞`.
    Lp {
        p: T,
    },
    /// `r(θ) = a₀ + Σ aₖ cos(2kθ)`.
    FourierRadial {
        coefficients: Vec<T>,
    },
}

/// Description of a norm plus the table resolution used to realize it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormSpec<T> {
    pub kind: NormKind<T>,
    pub table_size: usize,
}

impl<T: Real> NormSpec<T> {
    pub fn euclidean() -> Self {
        Self::from_kind(NormKind::Euclidean)
    }

    pub fn lp(p: T) -> Self {
        Self::from_kind(NormKind::Lp { p })
    }

    pub fn fourier_radial(coefficients: Vec<T>) -> Self {
        Self::from_kind(NormKind::FourierRadial { coefficients })
    }

    pub fn from_kind(kind: NormKind<T>) -> Self {
        Self {
            kind,
            table_size: DEFAULT_TABLE_SIZE,
        }
    }

    pub fn with_table_size(mut self, n: usize) -> Self {
        self.table_size = n;
        self
    }
}

/// A validated normed plane with cached unit-circle tables.
///
/// The unit circle is `c(θ) = r(θ)(cos θ, sin θ)`. Tables are sampled at
/// `θᵢ = 2πi/N`, so axis directions are table nodes whenever `N` is a
/// multiple of four.
#[derive(Clone, Debug)]
pub struct NormedPlane<T> {
    spec: NormSpec<T>,
    radial: Radial<T>,
    n: usize,
    step: T,
    psi: Vec<T>,
    arc: Vec<T>,
    rho: Vec<T>,
}

impl<T: Real> NormedPlane<T> {
    /// Builds the tables and checks smoothness, symmetry and strict convexity.
    pub fn build(spec: NormSpec<T>) -> Result<Self> {
        let n = spec.table_size;
        if n < 16 {
            return Err(Error::BadParameter(format!("table_size {n} is below 16")));
        }
        let radial = match &spec.kind {
            NormKind::Euclidean => Radial::Euclidean,
            NormKind::Lp { p } => {
                if !p.is_finite() || *p < T::one() {
                    return Err(Error::BadParameter(format!(
                        "l_p exponent must be finite and at least 1, got {p}"
                    )));
                }
                Radial::Lp(*p)
            }
            NormKind::FourierRadial { coefficients } => {
                if coefficients.is_empty() || coefficients.iter().any(|a| !a.is_finite()) {
                    return Err(Error::BadParameter(
                        "fourier_radial needs finite coefficients".into(),
                    ));
                }
                Radial::Fourier(coefficients.clone())
            }
        };
        let two_pi = T::PI() + T::PI();
        let step = two_pi / lit(n as f64);
        let mut plane = Self {
            spec,
            radial,
            n,
            step,
            psi: Vec::with_capacity(n + 1),
            arc: Vec::with_capacity(n + 1),
            rho: Vec::with_capacity(n),
        };

        let mut angles = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let th = plane.node(i);
            let (r, r1, r2) = plane.radial.eval(th);
            if !(r > T::zero()) || !r.is_finite() || !r1.is_finite() || !r2.is_finite() {
                return Err(Error::PositivityViolation {
                    theta: to_f64(th),
                    value: to_f64(r),
                });
            }
            let (c, c1, _) = plane.frame(th);
            if i < n {
                let opp = plane.boundary(th + T::PI());
                if (opp + c).len() > tol::<T>(1e-12) * c.len().max(T::one()) {
                    return Err(Error::BadParameter(format!(
                        "unit circle is not centrally symmetric at theta = {th}"
                    )));
                }
                let area = c.cross(c1);
                if area <= lit(1e-9) {
                    return Err(Error::ConvexityViolation {
                        theta: to_f64(th),
                        value: to_f64(area),
                    });
                }
                if (plane.norm(c) - T::one()).abs() > tol::<T>(1e-12) {
                    return Err(Error::BadParameter(format!(
                        "norm and boundary disagree at theta = {th}"
                    )));
                }
                if plane.tangent_rate(th) < -tol::<T>(1e-12) {
                    return Err(Error::ConvexityViolation {
                        theta: to_f64(th),
                        value: to_f64(plane.tangent_rate(th)),
                    });
                }
            }
            angles.push(c1.angle());
        }

        plane.psi.push(angles[0]);
        for i in 0..n {
            let inc = wrap_pi(angles[i + 1] - angles[i]);
            if !(inc > tol::<T>(1e-13)) {
                return Err(Error::ConvexityViolation {
                    theta: to_f64(plane.node(i)),
                    value: to_f64(inc),
                });
            }
            let next = plane.psi[i] + inc;
            plane.psi.push(next);
        }
        if (plane.psi[n] - plane.psi[0] - two_pi).abs() > tol::<T>(1e-9) {
            return Err(Error::ConvexityViolation {
                theta: 0.0,
                value: to_f64(plane.psi[n] - plane.psi[0]),
            });
        }

        plane.arc.push(T::zero());
        for i in 0..n {
            let seg = gauss8(|t| plane.speed(t), plane.node(i), plane.node(i + 1));
            let next = plane.arc[i] + seg;
            plane.arc.push(next);
        }
        for i in 0..n {
            let r = plane.rho_theta(plane.node(i));
            plane.rho.push(r);
        }
        Ok(plane)
    }

    pub fn spec(&self) -> &NormSpec<T> {
        &self.spec
    }

    pub fn table_size(&self) -> usize {
        self.n
    }

    /// Table node `θᵢ`.
    #[inline]
    pub fn node(&self, i: usize) -> T {
        self.step * lit(i as f64)
    }

    fn cell(&self, theta: T) -> (T, usize) {
        let th = rem_pos(theta, T::PI() + T::PI());
        let i = (th / self.step)
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(self.n - 1);
        (th, i)
    }

    /// Radial function and its first two derivatives.
    pub fn radius(&self, theta: T) -> (T, T, T) {
        self.radial.eval(theta)
    }

    /// Unit circle point `c(θ)`.
    pub fn boundary(&self, theta: T) -> Vec2<T> {
        let (r, _, _) = self.radial.eval(theta);
        Vec2::from_angle(theta) * r
    }

    /// `c(θ)`, `c′(θ)`, `c″(θ)`.
    pub fn frame(&self, theta: T) -> (Vec2<T>, Vec2<T>, Vec2<T>) {
        let (r, r1, r2) = self.radial.eval(theta);
        let u = Vec2::from_angle(theta);
        let n = u.perp();
        let two: T = lit(2.0);
        (u * r, u * r1 + n * r, u * (r2 - r) + n * (two * r1))
    }

    /// Minkowski norm, `|v|₂ / r(arg v)`.
    pub fn norm(&self, v: Vec2<T>) -> T {
        let l = v.len();
        if l == T::zero() {
            return T::zero();
        }
        l / self.radial.eval(v.angle()).0
    }

    /// Minkowski length of `c′(θ)`.
    pub fn speed(&self, theta: T) -> T {
        let (_, c1, _) = self.frame(theta);
        self.norm(c1)
    }

    /// Continuous tangent-angle lift `ψ(θ)` for `θ ∈ [0, 2π)`.
    pub fn tangent_angle(&self, theta: T) -> T {
        let (th, i) = self.cell(theta);
        self.tangent_angle_from(th, self.psi[i])
    }

    fn tangent_angle_from(&self, theta: T, base: T) -> T {
        let (_, c1, _) = self.frame(theta);
        base + wrap_pi(c1.angle() - base)
    }

    /// `ψ′(θ) = [c′, c″] / |c′|²`.
    pub fn tangent_rate(&self, theta: T) -> T {
        let (_, c1, c2) = self.frame(theta);
        c1.cross(c2) / c1.dot(c1)
    }

    fn require_unit(&self, v: Vec2<T>) -> Result<()> {
        let nv = self.norm(v);
        if (nv - T::one()).abs() > tol::<T>(1e-9) {
            return Err(Error::NotUnit { norm: to_f64(nv) });
        }
        Ok(())
    }

    /// Birkhoff map `b(v)`: the unit supporting direction at `v/‖v‖`.
    pub fn birkhoff(&self, v: Vec2<T>) -> Result<Vec2<T>> {
        if v.x == T::zero() && v.y == T::zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.birkhoff_dir(v))
    }

    pub(crate) fn birkhoff_dir(&self, v: Vec2<T>) -> Vec2<T> {
        let (_, c1, _) = self.frame(v.angle());
        c1 / self.norm(c1)
    }

    /// Parameter `θ` whose tangent direction is the direction of `w`.
    pub fn tangent_theta(&self, w: Vec2<T>) -> Result<T> {
        let two_pi = T::PI() + T::PI();
        let target = self.psi[0] + rem_pos(w.angle() - self.psi[0], two_pi);
        let i = self.psi[..=self.n]
            .partition_point(|&p| p <= target)
            .saturating_sub(1)
            .min(self.n - 1);
        let (a, b) = (self.node(i), self.node(i + 1));
        let base = self.psi[i];
        let frac = (target - base) / (self.psi[i + 1] - base);
        let x0 = a + (b - a) * frac;
        safe_newton(
            |th| {
                (
                    self.tangent_angle_from(th, base) - target,
                    self.tangent_rate(th),
                )
            },
            a,
            b,
            x0,
            tol(1e-15),
        )
        .ok_or_else(|| Error::NoConvergence("inverse Birkhoff root find".into()))
    }

    /// Inverse of `b` on the unit circle; `w` must be unit.
    pub fn birkhoff_inverse(&self, w: Vec2<T>) -> Result<Vec2<T>> {
        self.require_unit(w)?;
        self.birkhoff_inverse_dir(w)
    }

    /// Inverse Birkhoff map applied to the direction of any nonzero `w`.
    pub fn birkhoff_inverse_dir(&self, w: Vec2<T>) -> Result<Vec2<T>> {
        if w.x == T::zero() && w.y == T::zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.boundary(self.tangent_theta(w)?))
    }

    /// Anti-norm `‖x‖ₐ = ‖x‖·[b⁻¹(x̂), x̂]`.
    pub fn antinorm(&self, x: Vec2<T>) -> T {
        let nx = self.norm(x);
        if nx == T::zero() {
            return T::zero();
        }
        let xh = x / nx;
        match self.birkhoff_inverse_dir(xh) {
            Ok(z) => nx * z.cross(xh),
            Err(_) => self.antinorm_sampled(x),
        }
    }

    /// Anti-norm as `sup |[x, y]|` over the unit circle, by sampling the
    /// table and refining the best node with golden section.
    pub fn antinorm_sampled(&self, x: Vec2<T>) -> T {
        let mut best = 0;
        let mut val = T::zero();
        for i in 0..self.n {
            let v = x.cross(self.boundary(self.node(i))).abs();
            if v > val {
                val = v;
                best = i;
            }
        }
        let th = self.node(best);
        let (_, m) = golden_min(
            |t| -x.cross(self.boundary(t)).abs(),
            th - self.step,
            th + self.step,
            200,
        );
        val.max(-m)
    }

    /// Golden-section test of `x ⊣ y`: `min_t ‖x + ty‖ ≥ ‖x‖(1 − tol)`.
    pub fn is_birkhoff_orthogonal(&self, x: Vec2<T>, y: Vec2<T>, tolerance: T) -> Result<bool> {
        let nx = self.norm(x);
        let ny = self.norm(y);
        if nx == T::zero() || ny == T::zero() {
            return Err(Error::ZeroVector);
        }
        let span = lit::<T>(4.0) * nx / ny;
        let (_, m) = golden_min(|t| self.norm(x + y * t), -span, span, 200);
        Ok(m >= nx * (T::one() - tolerance))
    }

    /// Minkowski circumference `L` of the unit circle.
    pub fn total_length(&self) -> T {
        self.arc[self.n]
    }

    /// Arc length `u(θ)` from `c(0)`, for `θ` reduced to `[0, 2π)`.
    pub fn arc_length_at(&self, theta: T) -> T {
        let (th, i) = self.cell(theta);
        self.arc[i] + gauss8(|t| self.speed(t), self.node(i), th)
    }

    /// Parameter `θ` at arc length `u` (reduced mod `L`).
    pub fn theta_at_arc(&self, u: T) -> Result<T> {
        let l = self.total_length();
        let ur = rem_pos(u, l);
        let i = self
            .arc
            .partition_point(|&a| a <= ur)
            .saturating_sub(1)
            .min(self.n - 1);
        let (a, b) = (self.node(i), self.node(i + 1));
        let base = self.arc[i];
        let x0 = a + (b - a) * (ur - base) / (self.arc[i + 1] - base);
        safe_newton(
            |th| (base + gauss8(|t| self.speed(t), a, th) - ur, self.speed(th)),
            a,
            b,
            x0,
            tol(1e-15),
        )
        .ok_or_else(|| Error::NoConvergence("arc-length inversion".into()))
    }

    /// Arc-length parametrization `φ(u)` of the unit circle.
    pub fn unit_circle_point(&self, u: T) -> Result<Vec2<T>> {
        Ok(self.boundary(self.theta_at_arc(u)?))
    }

    /// `dφ/du = b(φ(u))`.
    pub fn tangent_at_arc(&self, u: T) -> Result<Vec2<T>> {
        let (_, c1, _) = self.frame(self.theta_at_arc(u)?);
        Ok(c1 / self.norm(c1))
    }

    /// Distortion `ρ` of `b` at the unit circle point of angle `θ`.
    pub fn rho_theta(&self, theta: T) -> T {
        let psi = self.frame(theta).1.angle();
        self.tangent_rate(theta) * self.speed(psi) / self.speed(theta)
    }

    /// Distortion `ρ(v) = ‖Db_v(b(v))‖` for unit `v`.
    pub fn rho(&self, v: Vec2<T>) -> Result<T> {
        self.require_unit(v)?;
        Ok(self.rho_theta(v.angle()))
    }

    /// `ρ` at the table nodes.
    pub fn rho_table(&self) -> &[T] {
        &self.rho
    }

    /// `sup |b(b(v)) + v|` over table nodes; zero on Radon planes.
    pub fn radon_defect(&self) -> T {
        (0..self.n)
            .map(|i| {
                let c = self.boundary(self.node(i));
                let bb = self.birkhoff_dir(self.birkhoff_dir(c));
                (bb + c).len()
            })
            .fold(T::zero(), |m, d| m.max(d))
    }
}

/// Transfer map `T(v) = b₂⁻¹(b₁(v))` between two planes.
pub fn transfer_unit<T: Real>(
    from: &NormedPlane<T>,
    to: &NormedPlane<T>,
    v: Vec2<T>,
) -> Result<Vec2<T>> {
    from.require_unit(v)?;
    to.birkhoff_inverse_dir(from.birkhoff_dir(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

    fn l3() -> NormedPlane<f64> {
        NormedPlane::build(NormSpec::lp(3.0)).unwrap()
    }

    #[test]
    fn euclidean_basics() {
        let e = NormedPlane::build(NormSpec::<f64>::euclidean()).unwrap();
        assert!((e.total_length() - TAU).abs() < 1e-9);
        assert!((e.norm(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-15);
        let b = e.birkhoff(Vec2::new(1.0, 0.0)).unwrap();
        assert!((b - Vec2::new(0.0, 1.0)).len() < 1e-15);
        let z = e.birkhoff_inverse(Vec2::new(0.0, 1.0)).unwrap();
        assert!((z - Vec2::new(1.0, 0.0)).len() < 1e-14);
        assert!((e.antinorm(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-12);
        assert!(e.radon_defect() < 1e-9);
        let p = e.unit_circle_point(PI / 2.0).unwrap();
        assert!((p - Vec2::new(0.0, 1.0)).len() < 1e-12);
    }

    #[test]
    fn l3_values() {
        let p = l3();
        assert!((p.norm(Vec2::new(1.0, 1.0)) - 2f64.powf(1.0 / 3.0)).abs() < 1e-14);
        let s = 2f64.powf(-1.0 / 3.0);
        let b = p.birkhoff(Vec2::new(s, s)).unwrap();
        assert!((b - Vec2::new(-s, s)).len() < 1e-13);
        let z = p.birkhoff_inverse(Vec2::new(-s, s)).unwrap();
        assert!((z - Vec2::new(s, s)).len() < 1e-12);
        let b = p.birkhoff(Vec2::new(1.0, 0.0)).unwrap();
        assert!((b - Vec2::new(0.0, 1.0)).len() < 1e-13);
        assert!((p.antinorm(Vec2::new(1.0, 0.0)) - 1.0).abs() < 1e-10);
        assert!((p.antinorm(Vec2::new(1.0, 1.0)) - 2f64.powf(2.0 / 3.0)).abs() < 1e-10);
        assert!(p.rho(Vec2::new(1.0, 0.0)).unwrap() < 1e-4);
        assert!(p.radon_defect() > 1e-3);
        let l = p.total_length();
        assert!((6.0..=8.0).contains(&l));
    }

    #[test]
    fn rejections() {
        let e = NormedPlane::build(NormSpec::fourier_radial(vec![1.0, -2.0])).unwrap_err();
        assert!(matches!(e, Error::PositivityViolation { .. }));
        let e = NormedPlane::build(NormSpec::lp(0.5)).unwrap_err();
        assert!(matches!(e, Error::BadParameter(_)));
        let e = NormedPlane::build(NormSpec::lp(1.0)).unwrap_err();
        assert!(matches!(e, Error::ConvexityViolation { .. }));
    }

    #[test]
    fn transfer_examples() {
        let e = NormedPlane::build(NormSpec::<f64>::euclidean()).unwrap();
        let p = l3();
        let t = transfer_unit(&e, &p, Vec2::new(1.0, 0.0)).unwrap();
        // The tangent angle is flat to second order at the axes of l3, so
        // inverting it there only recovers about half the digits.
        assert!((t - Vec2::new(1.0, 0.0)).len() < 1e-7);
        let t = transfer_unit(&e, &p, Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap();
        let s = 2f64.powf(-1.0 / 3.0);
        assert!((t - Vec2::new(s, s)).len() < 1e-12);
    }

    #[test]
    fn single_precision_plane() {
        let p = NormedPlane::build(NormSpec::<f32>::lp(3.0).with_table_size(512)).unwrap();
        let b = p.birkhoff(Vec2::new(1.0f32, 0.0)).unwrap();
        assert!((b - Vec2::new(0.0, 1.0)).len() < 1e-5);
        assert!((p.norm(Vec2::new(1.0f32, 1.0)) - 2f32.powf(1.0 / 3.0)).abs() < 1e-6);
    }
}
