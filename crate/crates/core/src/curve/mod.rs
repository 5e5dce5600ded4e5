//! Parametrized plane curves and unit normal fields.

mod normal;

pub use normal::{
    extend_normal, induced_normal, legendre_residual, legendre_residual_gated, SINGULAR_RATIO,
};

use crate::error::{Error, Result};
use crate::numeric::fd;
use crate::numeric::interp::{spline_slopes, HermiteTable};
use crate::scalar::{lit, rem_pos, to_f64, tol, Real};
use crate::vector::Vec2;
use std::fmt;
use std::sync::Arc;

/// Shared vector-valued evaluator.
pub type PointFn<T> = Arc<dyn Fn(T) -> Vec2<T> + Send + Sync>;

/// Default number of grid samples.
pub const DEFAULT_SAMPLES: usize = 2048;

/// Relative finite-difference step, `h = (t₁ − t₀)·FD_STEP`.
pub const FD_STEP: f64 = 1e-4;

/// A plane curve on `[t₀, t₁]`, open or closed.
///
/// Closed curves identify `t₁` with `t₀`; the evaluator is called with the
/// parameter reduced into `[t₀, t₁)`.
#[derive(Clone)]
pub struct ParamCurve<T> {
    t0: T,
    t1: T,
    closed: bool,
    samples: usize,
    pos: PointFn<T>,
    derivs: [Option<PointFn<T>>; 3],
}

impl<T: fmt::Debug> fmt::Debug for ParamCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("domain", &[&self.t0, &self.t1])
            .field("closed", &self.closed)
            .field("samples", &self.samples)
            .field(
                "analytic_orders",
                &self.derivs.iter().filter(|d| d.is_some()).count(),
            )
            .finish()
    }
}

impl<T: Real> ParamCurve<T> {
    /// Builds a curve and checks that it is finite on the grid and, when
    /// closed, that position and velocity match across the seam.
    pub fn new<F>(domain: (T, T), closed: bool, f: F) -> Result<Self>
    where
        F: Fn(T) -> Vec2<T> + Send + Sync + 'static,
    {
        let c = Self::unchecked(domain, closed, f)?;
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn unchecked<F>(domain: (T, T), closed: bool, f: F) -> Result<Self>
    where
        F: Fn(T) -> Vec2<T> + Send + Sync + 'static,
    {
        let (t0, t1) = domain;
        if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
            return Err(Error::InvalidCurve(format!("bad domain [{t0}, {t1}]")));
        }
        Ok(Self {
            t0,
            t1,
            closed,
            samples: DEFAULT_SAMPLES,
            pos: Arc::new(f),
            derivs: [None, None, None],
        })
    }

    fn validate(&self) -> Result<()> {
        for t in self.grid() {
            if !self.position(t).is_finite() {
                return Err(Error::InvalidCurve(format!("non-finite point at t = {t}")));
            }
        }
        if self.closed {
            let a = (self.pos)(self.t0);
            let b = (self.pos)(self.t1);
            let scale = a.len().max(T::one());
            if a.dist(b) > tol::<T>(1e-9) * scale {
                return Err(Error::InvalidCurve(format!(
                    "closed curve does not close: gap {}",
                    to_f64(a.dist(b))
                )));
            }
            let h = self.fd_step();
            let raw = |t: T| (self.pos)(t);
            let da: Vec2<T> = fd::derivative(raw, self.t0, 1, h, self.t0, self.t1, false);
            let db: Vec2<T> = fd::derivative(raw, self.t1, 1, h, self.t0, self.t1, false);
            if da.dist(db) > tol::<T>(1e-6) * da.len().max(T::one()) {
                return Err(Error::InvalidCurve(format!(
                    "closed curve has a velocity jump {} at the seam",
                    to_f64(da.dist(db))
                )));
            }
        }
        Ok(())
    }

    /// Attaches an analytic derivative of order 1, 2 or 3.
    pub fn with_derivative<F>(mut self, order: usize, f: F) -> Self
    where
        F: Fn(T) -> Vec2<T> + Send + Sync + 'static,
    {
        assert!((1..=3).contains(&order), "derivative order must be 1..=3");
        self.derivs[order - 1] = Some(Arc::new(f));
        self
    }

    /// Sets the grid size.
    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n.max(8);
        self
    }

    /// Interpolates samples with a C² cubic spline (periodic when closed).
    ///
    /// For closed data a trailing sample equal to the first one is dropped;
    /// otherwise the closing gap is taken equal to the first spacing.
    pub fn from_samples(ts: Vec<T>, pts: Vec<Vec2<T>>, closed: bool) -> Result<Self> {
        let mut ts = ts;
        let mut pts = pts;
        if ts.len() != pts.len() || ts.len() < 5 {
            return Err(Error::InvalidCurve("need at least five samples".into()));
        }
        if ts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidCurve(
                "sample parameters must increase".into(),
            ));
        }
        let n0 = ts.len();
        let t_first = ts[0];
        let (period, samples) = if closed {
            let dup = pts[0].dist(pts[n0 - 1]) <= tol::<T>(1e-12) * pts[0].len().max(T::one());
            if dup {
                let p = ts[n0 - 1] - t_first;
                ts.pop();
                pts.pop();
                (Some(p), n0 - 1)
            } else {
                (Some(ts[n0 - 1] - t_first + (ts[1] - ts[0])), n0)
            }
        } else {
            (None, n0)
        };
        let d = spline_slopes(&ts, &pts, period);
        let (mut tt, mut yy, mut dd) = (ts, pts, d);
        let t1 = match period {
            Some(p) => {
                tt.push(t_first + p);
                yy.push(yy[0]);
                dd.push(dd[0]);
                t_first + p
            }
            None => *tt.last().unwrap(),
        };
        let table = HermiteTable::new(tt, yy, dd);
        let c = Self::unchecked((t_first, t1), closed, move |t| table.eval(t))?;
        Ok(c.with_samples(samples.max(8)))
    }

    pub fn domain(&self) -> (T, T) {
        (self.t0, self.t1)
    }

    pub fn span(&self) -> T {
        self.t1 - self.t0
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Finite-difference step used for every numerical derivative.
    pub fn fd_step(&self) -> T {
        self.span() * lit(FD_STEP)
    }

    /// Distance between consecutive grid points.
    pub fn grid_step(&self) -> T {
        if self.closed {
            self.span() / lit(self.samples as f64)
        } else {
            self.span() / lit((self.samples - 1) as f64)
        }
    }

    /// Sample grid; closed grids omit `t₁`.
    pub fn grid(&self) -> Vec<T> {
        let h = self.grid_step();
        (0..self.samples)
            .map(|i| {
                if !self.closed && i + 1 == self.samples {
                    self.t1
                } else {
                    self.t0 + h * lit(i as f64)
                }
            })
            .collect()
    }

    /// Reduces `t` into `[t₀, t₁)` for closed curves; identity otherwise.
    pub fn wrap(&self, t: T) -> T {
        if self.closed {
            self.t0 + rem_pos(t - self.t0, self.span())
        } else {
            t
        }
    }

    pub fn contains(&self, t: T) -> bool {
        let slack = self.span() * lit(1e-12);
        self.closed || (t >= self.t0 - slack && t <= self.t1 + slack)
    }

    pub(crate) fn check(&self, t: T) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                t: to_f64(t),
                lo: to_f64(self.t0),
                hi: to_f64(self.t1),
            })
        }
    }

    /// `γ(t)`.
    pub fn position(&self, t: T) -> Vec2<T> {
        (self.pos)(self.wrap(t))
    }

    /// `dᵏγ/dtᵏ` for `k ≤ 3`: analytic when attached, otherwise fourth-order
    /// finite differences.
    pub fn derivative(&self, t: T, order: usize) -> Result<Vec2<T>> {
        self.check(t)?;
        Ok(self.deriv(t, order))
    }

    pub(crate) fn deriv(&self, t: T, order: usize) -> Vec2<T> {
        if order == 0 {
            return self.position(t);
        }
        if let Some(Some(f)) = self.derivs.get(order - 1) {
            return f(self.wrap(t));
        }
        fd::derivative(
            |s| self.position(s),
            t,
            order,
            self.fd_step(),
            self.t0,
            self.t1,
            self.closed,
        )
    }

    /// Derivatives of orders `0..=k` at `t`.
    pub fn jet(&self, t: T, k: usize) -> Result<Jet<T>> {
        self.check(t)?;
        Ok(Jet {
            t,
            derivs: (0..=k).map(|j| self.deriv(t, j)).collect(),
        })
    }
}

/// Derivatives `d⁰..dᵏ` of a vector-valued map at a base parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T> {
    pub t: T,
    pub derivs: Vec<Vec2<T>>,
}

/// How a normal field was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Analytic,
    InducedRegular,
    ExtendedThroughSingularities,
    UserSupplied,
    /// Integrated from a prescribed curvature pair.
    Synthesized,
    /// Built from the frame of another Legendre curve.
    Derived,
}

/// A unit vector field along a curve.
#[derive(Clone)]
pub struct NormalField<T> {
    f: PointFn<T>,
    provenance: Provenance,
    t0: T,
    t1: T,
    closed: bool,
}

impl<T: fmt::Debug> fmt::Debug for NormalField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormalField")
            .field("provenance", &self.provenance)
            .field("domain", &[&self.t0, &self.t1])
            .finish()
    }
}

impl<T: Real> NormalField<T> {
    /// A field on the domain of `curve`.
    pub fn new<F>(curve: &ParamCurve<T>, provenance: Provenance, f: F) -> Self
    where
        F: Fn(T) -> Vec2<T> + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            provenance,
            t0: curve.t0,
            t1: curve.t1,
            closed: curve.closed,
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn eval(&self, t: T) -> Vec2<T> {
        let t = if self.closed {
            self.t0 + rem_pos(t - self.t0, self.t1 - self.t0)
        } else {
            t
        };
        (self.f)(t)
    }

    /// `dᵏη/dtᵏ` by finite differences (`k ≤ 3`).
    pub fn derivative(&self, t: T, order: usize) -> Vec2<T> {
        let span = self.t1 - self.t0;
        fd::derivative(
            |s| self.eval(s),
            t,
            order,
            span * lit(FD_STEP),
            self.t0,
            self.t1,
            self.closed,
        )
    }
}
