//! Reconstruction of a Legendre curve from its curvature pair.

use crate::analysis::LegendreCurve;
use crate::curve::{NormalField, ParamCurve, Provenance, DEFAULT_SAMPLES};
use crate::error::{Error, Result};
use crate::numeric::interp::HermiteTable;
use crate::plane::NormedPlane;
use crate::scalar::{lit, to_f64, Real};
use crate::vector::{Mat2, Vec2};
use std::fmt;
use std::sync::Arc;

/// Default number of integration steps.
pub const DEFAULT_STEPS: usize = 4096;
/// Largest closing gap accepted for a closed synthesis, relative to the size
/// of the curve.
pub const CLOSURE_TOL: f64 = 1e-6;

pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Curvature pair and initial data for [`synthesize`].
#[derive(Clone)]
pub struct SynthesisSpec<T> {
    pub alpha: ScalarFn<T>,
    pub kappa: ScalarFn<T>,
    pub domain: (T, T),
    /// `γ` at the anchor parameter.
    pub p: Vec2<T>,
    /// `η` at the anchor parameter; unit in the plane's norm.
    pub v: Vec2<T>,
    pub steps: usize,
    pub closed: bool,
    pub samples: usize,
}

impl<T: fmt::Debug> fmt::Debug for SynthesisSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SynthesisSpec")
            .field("domain", &self.domain)
            .field("p", &self.p)
            .field("v", &self.v)
            .field("steps", &self.steps)
            .field("closed", &self.closed)
            .finish()
    }
}

impl<T: Real> SynthesisSpec<T> {
    pub fn new<A, K>(alpha: A, kappa: K, domain: (T, T), p: Vec2<T>, v: Vec2<T>) -> Self
    where
        A: Fn(T) -> T + Send + Sync + 'static,
        K: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            alpha: Arc::new(alpha),
            kappa: Arc::new(kappa),
            domain,
            p,
            v,
            steps: DEFAULT_STEPS,
            closed: false,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    /// Requests a closed curve; the integrated curve must then close up to
    /// [`CLOSURE_TOL`].
    pub fn closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    /// Parameter where the initial data is imposed: `0` clamped to the domain.
    pub fn anchor(&self) -> T {
        T::zero().max(self.domain.0).min(self.domain.1)
    }
}

struct Track<T> {
    t: Vec<T>,
    u: Vec<T>,
    du: Vec<T>,
    g: Vec<Vec2<T>>,
    dg: Vec<Vec2<T>>,
}

fn integrate<T: Real>(
    plane: &NormedPlane<T>,
    spec: &SynthesisSpec<T>,
    t0: T,
    u0: T,
    t1: T,
    n: usize,
) -> Result<Track<T>> {
    let field = |t: T, u: T| -> Result<(T, Vec2<T>)> {
        let xi = plane.tangent_at_arc(u)?;
        Ok(((spec.kappa)(t), xi * (spec.alpha)(t)))
    };
    let mut tr = Track {
        t: Vec::with_capacity(n + 1),
        u: Vec::with_capacity(n + 1),
        du: Vec::with_capacity(n + 1),
        g: Vec::with_capacity(n + 1),
        dg: Vec::with_capacity(n + 1),
    };
    let (mut u, mut g) = (u0, spec.p);
    let (mut ku, mut kg) = field(t0, u)?;
    tr.t.push(t0);
    tr.u.push(u);
    tr.du.push(ku);
    tr.g.push(g);
    tr.dg.push(kg);
    if n == 0 {
        return Ok(tr);
    }
    let h = (t1 - t0) / lit(n as f64);
    let half = h * lit(0.5);
    let two: T = lit(2.0);
    for i in 0..n {
        let t = t0 + h * lit(i as f64);
        let tm = t + half;
        let tn = if i + 1 == n { t1 } else { t + h };
        let (a2u, a2g) = field(tm, u + ku * half)?;
        let (a3u, a3g) = field(tm, u + a2u * half)?;
        let (a4u, a4g) = field(tn, u + a3u * h)?;
        u = u + (ku + (a2u + a3u) * two + a4u) * (h / lit(6.0));
        g += (kg + (a2g + a3g) * two + a4g) * (h / lit(6.0));
        let next = field(tn, u)?;
        ku = next.0;
        kg = next.1;
        tr.t.push(tn);
        tr.u.push(u);
        tr.du.push(ku);
        tr.g.push(g);
        tr.dg.push(kg);
    }
    Ok(tr)
}

/// Integrates `u′ = κ`, `γ′ = α·b(φ(u))` with classical fourth-order
/// Runge-Kutta and returns the resulting Legendre curve with `η = φ(u)`.
///
/// The initial data is imposed at `0` clamped to the domain; on two-sided
/// domains the integration runs in both directions from there.
pub fn synthesize<T: Real>(
    plane: &Arc<NormedPlane<T>>,
    spec: &SynthesisSpec<T>,
) -> Result<LegendreCurve<T>> {
    let (a, b) = spec.domain;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::BadParameter(
            "synthesis domain must satisfy a < b".into(),
        ));
    }
    if spec.steps < 2 {
        return Err(Error::BadParameter("at least two integration steps".into()));
    }
    let nv = plane.norm(spec.v);
    if !((nv - T::one()).abs() <= lit(1e-9)) {
        return Err(Error::NotUnit { norm: to_f64(nv) });
    }
    let u0 = plane.arc_length_at(spec.v.angle());
    let anchor = spec.anchor();
    let span = b - a;
    let m = spec.steps;
    let mut n_fwd = ((b - anchor) / span * lit(m as f64))
        .round()
        .to_usize()
        .unwrap_or(m)
        .min(m);
    if b > anchor && n_fwd == 0 {
        n_fwd = 1;
    }
    let mut n_bwd = m - n_fwd;
    if anchor > a && n_bwd == 0 {
        n_bwd = 1;
    }
    let fwd = integrate(plane, spec, anchor, u0, b, n_fwd)?;
    let bwd = integrate(plane, spec, anchor, u0, a, n_bwd)?;

    let mut t = Vec::with_capacity(n_fwd + n_bwd + 1);
    let mut u = Vec::with_capacity(t.capacity());
    let mut du = Vec::with_capacity(t.capacity());
    let mut g = Vec::with_capacity(t.capacity());
    let mut dg = Vec::with_capacity(t.capacity());
    for i in (1..bwd.t.len()).rev() {
        t.push(bwd.t[i]);
        u.push(bwd.u[i]);
        du.push(bwd.du[i]);
        g.push(bwd.g[i]);
        dg.push(bwd.dg[i]);
    }
    t.extend_from_slice(&fwd.t);
    u.extend_from_slice(&fwd.u);
    du.extend_from_slice(&fwd.du);
    g.extend_from_slice(&fwd.g);
    dg.extend_from_slice(&fwd.dg);

    if spec.closed {
        let last = t.len() - 1;
        let size = g.iter().fold(T::one(), |s, p| s.max(p.len()));
        let gap = g[last] - g[0];
        let length = plane.total_length();
        let turns = ((u[last] - u[0]) / length).round();
        let ugap = u[last] - u[0] - turns * length;
        if !(gap.len() <= size * lit(CLOSURE_TOL)) || !(ugap.abs() <= length * lit(CLOSURE_TOL)) {
            return Err(Error::InvalidCurve(format!(
                "synthesized curve does not close: position gap {:e}, normal gap {:e}",
                to_f64(gap.len()),
                to_f64(ugap)
            )));
        }
        // Spread the residual gap linearly so the curve closes exactly.
        for i in 0..t.len() {
            let f = (t[i] - a) / span;
            g[i] = g[i] - gap * f;
            u[i] = u[i] - ugap * f;
            dg[i] = dg[i] - gap / span;
            du[i] = du[i] - ugap / span;
        }
    }

    let gt = HermiteTable::new(t.clone(), g, dg);
    let ut = Arc::new(HermiteTable::new(t, u, du));
    let curve =
        ParamCurve::new((a, b), spec.closed, move |s| gt.eval(s))?.with_samples(spec.samples);
    let p2 = Arc::clone(plane);
    let normal = NormalField::new(&curve, Provenance::Synthesized, move |s| {
        p2.unit_circle_point(ut.eval(s))
            .unwrap_or_else(|_| Vec2::new(T::nan(), T::nan()))
    });
    LegendreCurve::new(Arc::clone(plane), curve, normal)
}

/// Largest deviation `|‖Mx‖ − 1|` over 64 unit vectors.
pub fn isometry_defect<T: Real>(plane: &NormedPlane<T>, m: &Mat2<T>) -> T {
    let two_pi = T::PI() + T::PI();
    (0..64)
        .map(|i| {
            let x = plane.boundary(two_pi * lit(i as f64 / 64.0));
            (plane.norm(m.apply(x)) - T::one()).abs()
        })
        .fold(T::zero(), |a, d| a.max(d))
}

/// `(Mγ, Mη)` revalidated as a Legendre curve.
///
/// With `is_isometry` set, `M` must preserve the norm on 64 sampled unit
/// vectors within `1e-9`; otherwise `Mη` is renormalized.
pub fn apply_linear_map<T: Real>(
    l: &LegendreCurve<T>,
    m: Mat2<T>,
    is_isometry: bool,
) -> Result<LegendreCurve<T>> {
    let plane = Arc::clone(l.plane());
    if is_isometry {
        let dev = isometry_defect(&plane, &m);
        if !(dev <= lit(1e-9)) {
            return Err(Error::NotAnIsometry {
                deviation: to_f64(dev),
            });
        }
    } else if m.det() == T::zero() {
        return Err(Error::BadParameter("singular linear map".into()));
    }
    let src = l.curve().clone();
    let mut curve = {
        let c = src.clone();
        ParamCurve::new(src.domain(), src.is_closed(), move |t| {
            m.apply(c.position(t))
        })?
    };
    for order in 1..=3 {
        let c = src.clone();
        curve = curve.with_derivative(order, move |t| m.apply(c.deriv(t, order)));
    }
    let curve = curve.with_samples(src.samples());
    let eta = l.normal().clone();
    let p2 = Arc::clone(&plane);
    let normal = NormalField::new(&curve, Provenance::Derived, move |t| {
        let w = m.apply(eta.eval(t));
        if is_isometry {
            w
        } else {
            w / p2.norm(w)
        }
    });
    LegendreCurve::new(plane, curve, normal)
}
