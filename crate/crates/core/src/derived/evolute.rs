use super::{curve_like, require_front, require_kappa};
use crate::analysis::{CurvaturePair, LegendreCurve};
use crate::curve::{NormalField, Provenance};
use crate::error::Result;
use crate::numeric::crossings::{scan, touches};
use crate::numeric::fd::grid_derivative;
use crate::scalar::{lit, Real};
use crate::vector::Vec2;
use std::sync::Arc;

/// `ρ` below which the predicted frame curvature `κ/ρ` is masked.
pub const FRAME_RHO_GATE: f64 = 1e-6;
/// Legendre tolerance for the evolute frame.
const FRAME_TOL: f64 = 1e-4;
// Positions of the evolute already contain first derivatives of the source,
// so its own derivative is noisier near the evolute's cusps.
const FRAME_SINGULAR_RATIO: f64 = 1e-5;

/// Evolute `e = γ − (α/κ)η` with its Legendre frame `ν = −b⁻¹(η)`.
#[derive(Clone, Debug)]
pub struct EvoluteFrame<T> {
    /// `(e, ν)` as a Legendre curve.
    pub frame: LegendreCurve<T>,
    /// Grid of the source curve.
    pub t: Vec<T>,
    /// Predicted first curvature `(α/κ)′` on the grid.
    pub alpha: Vec<T>,
    /// Predicted second curvature `κ/ρ(ν)`, absent where `ρ` is below the gate.
    pub kappa: Vec<Option<T>>,
    /// `ρ(ν)` on the grid.
    pub rho: Vec<T>,
}

impl<T: Real> EvoluteFrame<T> {
    pub fn point(&self, t: T) -> Vec2<T> {
        self.frame.gamma(t)
    }

    pub fn points(&self) -> Vec<Vec2<T>> {
        self.t.iter().map(|&t| self.frame.gamma(t)).collect()
    }

    /// Largest deviations of the measured frame pair from the prediction at
    /// grid points where `ρ > rho_min`.
    pub fn curvature_mismatch(&self, measured: &CurvaturePair<T>, rho_min: T) -> (T, T) {
        let mut da = T::zero();
        let mut dk = T::zero();
        for i in 0..self.t.len() {
            da = da.max((measured.alpha[i] - self.alpha[i]).abs());
            if let Some(k) = self.kappa[i] {
                if self.rho[i] > rho_min {
                    dk = dk.max((measured.kappa[i] - k).abs());
                }
            }
        }
        (da, dk)
    }
}

/// Evolute of a front with nonvanishing `κ`.
pub fn evolute<T: Real>(l: &LegendreCurve<T>) -> Result<EvoluteFrame<T>> {
    let cp = l.curvature_pair()?;
    require_kappa(&cp)?;
    let plane = Arc::clone(l.plane());
    let src = l.clone();
    let curve = curve_like(l.curve(), move |t| match src.curvature_at(t) {
        Ok((a, k)) => src.gamma(t) - src.eta(t) * (a / k),
        Err(_) => Vec2::new(T::nan(), T::nan()),
    })?;
    let eta = l.normal().clone();
    let p2 = Arc::clone(&plane);
    let nu = NormalField::new(&curve, Provenance::Derived, move |t| {
        match p2.birkhoff_inverse_dir(eta.eval(t)) {
            Ok(w) => -w,
            Err(_) => Vec2::new(T::nan(), T::nan()),
        }
    });
    let frame = LegendreCurve::with_gate(
        Arc::clone(&plane),
        curve,
        nu,
        lit(FRAME_TOL),
        lit(FRAME_SINGULAR_RATIO),
    )?;

    let ratio: Vec<T> = cp
        .alpha
        .iter()
        .zip(&cp.kappa)
        .map(|(&a, &k)| a / k)
        .collect();
    let alpha = grid_derivative(&ratio, cp.step, cp.closed);
    let gate: T = lit(FRAME_RHO_GATE);
    let mut rho = Vec::with_capacity(cp.len());
    let mut kappa = Vec::with_capacity(cp.len());
    for (i, &t) in cp.t.iter().enumerate() {
        let r = plane.rho_theta(frame.eta(t).angle());
        rho.push(r);
        kappa.push(if r > gate {
            Some(cp.kappa[i] / r)
        } else {
            None
        });
    }
    Ok(EvoluteFrame {
        frame,
        t: cp.t,
        alpha,
        kappa,
        rho,
    })
}

/// 512 values spanning the range of `−α/κ`, widened by 1% on each side.
pub fn default_d_grid<T: Real>(cp: &CurvaturePair<T>) -> Vec<T> {
    let r: Vec<T> = cp
        .alpha
        .iter()
        .zip(&cp.kappa)
        .map(|(&a, &k)| -a / k)
        .collect();
    let lo = r.iter().fold(T::infinity(), |m, &x| m.min(x));
    let hi = r.iter().fold(T::neg_infinity(), |m, &x| m.max(x));
    let pad = (hi - lo) * lit(0.01);
    let (lo, hi) = (lo - pad, hi + pad);
    let n = 512;
    (0..n)
        .map(|i| lo + (hi - lo) * lit(i as f64 / (n - 1) as f64))
        .collect()
}

/// Singular points of the parallels `γ + dη` for `d` in `d_grid`, ordered by
/// parameter.
///
/// Besides sign changes of `α + dκ`, a local minimum of `|α + dκ|` below
/// `½Δd·|κ|` (`Δd` the sweep spacing) counts as singular: the parallel
/// whose singular point sits at an extremum of `−α/κ` lies between two sweep
/// values. A parallel whose first curvature vanishes identically contributes
/// every grid point.
pub fn evolute_as_parallel_singularities<T: Real>(
    l: &LegendreCurve<T>,
    d_grid: &[T],
) -> Result<Vec<Vec2<T>>> {
    let cp = l.curvature_pair()?;
    require_front(&cp)?;
    require_kappa(&cp)?;
    let mut hits: Vec<(T, Vec2<T>)> = Vec::new();
    let a_max = cp.max_abs_alpha();
    let k_max = cp.max_abs_kappa();
    let spacing = d_grid
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(T::infinity(), |m, x| m.min(x));
    let near = if spacing.is_finite() {
        spacing * k_max * lit(0.5)
    } else {
        T::zero()
    };
    let sk = cp.sampled(cp.kappa.clone());
    let half = spacing * lit(0.5);
    for &d in d_grid {
        let f: Vec<T> = cp
            .alpha
            .iter()
            .zip(&cp.kappa)
            .map(|(&a, &k)| a + d * k)
            .collect();
        let floor = (a_max + d.abs() * k_max) * lit(1e-10) + T::min_positive_value();
        let s = cp.sampled(f);
        let sc = scan(&s, floor, None);
        let at = |t: T| (t, l.gamma(t) + l.eta(t) * d);
        if sc.all_small {
            hits.extend(cp.t.iter().map(|&t| at(t)));
            continue;
        }
        hits.extend(sc.crossings.iter().map(|c| at(c.t)));
        hits.extend(
            touches(&s, near, near, None)
                .into_iter()
                .filter(|&t| s.eval(t).abs() <= half * sk.eval(t).abs())
                .map(at),
        );
    }
    hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    Ok(hits.into_iter().map(|h| h.1).collect())
}
