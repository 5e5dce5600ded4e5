use super::LegendreCurve;
use crate::error::{Error, Result};
use crate::numeric::fd;
use crate::scalar::{lit, Real};
use crate::vector::Vec2;
use serde::Serialize;

/// Relative tolerance on jet components.
const CONTACT_REL: f64 = 1e-5;
/// Tolerance on curvature-pair derivatives.
const MATCH_TOL: f64 = 1e-4;
/// Highest supported contact order.
pub const MAX_CONTACT: usize = 4;
// Outer finite-difference step for derivatives of (α, κ), relative to the span.
// Larger than the curve step because curvature evaluation already differentiates.
const PAIR_STEP: f64 = 1e-3;

fn pair_jet<T: Real>(l: &LegendreCurve<T>, t: T, k: usize) -> Vec<(Vec2<T>, Vec2<T>)> {
    (0..k)
        .map(|j| {
            let g = l.curve().deriv(t, j);
            let e = if j == 0 {
                l.eta(t)
            } else {
                l.normal().derivative(t, j)
            };
            (g, e)
        })
        .collect()
}

/// Largest `j ≤ kmax` such that the derivatives of orders `0..j` of
/// `(γ₁, η₁)` at `t0` and `(γ₂, η₂)` at `u0` agree componentwise.
pub fn contact_order<T: Real>(
    l1: &LegendreCurve<T>,
    t0: T,
    l2: &LegendreCurve<T>,
    u0: T,
    kmax: usize,
) -> Result<usize> {
    if kmax > MAX_CONTACT {
        return Err(Error::BadParameter(format!(
            "contact order above {MAX_CONTACT} is not supported"
        )));
    }
    l1.curve().check(t0)?;
    l2.curve().check(u0)?;
    let a = pair_jet(l1, t0, kmax);
    let b = pair_jet(l2, u0, kmax);
    let scale = a
        .iter()
        .chain(&b)
        .flat_map(|(g, e)| [g.x, g.y, e.x, e.y])
        .fold(T::one(), |m, x| m.max(x.abs()));
    let tol = scale * lit(CONTACT_REL);
    let close = |p: Vec2<T>, q: Vec2<T>| (p.x - q.x).abs() <= tol && (p.y - q.y).abs() <= tol;
    Ok(a.iter()
        .zip(&b)
        .take_while(|((g1, e1), (g2, e2))| close(*g1, *g2) && close(*e1, *e2))
        .count())
}

/// Residuals of `dʲα` and `dʲκ` at one order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderResidual<T> {
    pub order: usize,
    pub alpha: T,
    pub kappa: T,
}

/// Comparison of curvature-pair derivatives at a contact point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureMatch<T> {
    /// Measured contact order of the two pairs.
    pub contact: usize,
    /// Residuals for `j = 0..k`.
    pub residuals: Vec<OrderResidual<T>>,
    /// Every residual below tolerance.
    pub agree: bool,
    /// Residuals below tolerance for `j ≤ k − 2`, the orders fixed by the
    /// contact through `η′ = κξ` and `γ′ = αξ`.
    pub agree_implied: bool,
}

fn pair_derivative<T: Real>(l: &LegendreCurve<T>, t: T, order: usize) -> Vec2<T> {
    let (lo, hi) = l.curve().domain();
    let f = |s: T| match l.curvature_at(s) {
        Ok((a, k)) => Vec2::new(a, k),
        Err(_) => Vec2::new(T::nan(), T::nan()),
    };
    if order == 0 {
        return f(t);
    }
    fd::derivative(
        f,
        t,
        order,
        l.curve().span() * lit(PAIR_STEP),
        lo,
        hi,
        l.curve().is_closed(),
    )
}

/// Checks that contact of order `k` forces `dʲ(α, κ)` to agree for `j < k`.
pub fn contact_implies_curvature_match<T: Real>(
    l1: &LegendreCurve<T>,
    t0: T,
    l2: &LegendreCurve<T>,
    u0: T,
    k: usize,
) -> Result<CurvatureMatch<T>> {
    let contact = contact_order(l1, t0, l2, u0, k)?;
    if contact < k {
        return Err(Error::PreconditionViolated(format!(
            "contact order {contact} is below {k}"
        )));
    }
    let tol: T = lit(MATCH_TOL);
    let residuals: Vec<OrderResidual<T>> = (0..k)
        .map(|j| {
            let d = pair_derivative(l1, t0, j) - pair_derivative(l2, u0, j);
            OrderResidual {
                order: j,
                alpha: d.x.abs(),
                kappa: d.y.abs(),
            }
        })
        .collect();
    let ok = |r: &OrderResidual<T>| r.alpha <= tol && r.kappa <= tol;
    Ok(CurvatureMatch {
        contact,
        agree: residuals.iter().all(ok),
        agree_implied: residuals.iter().filter(|r| r.order + 2 <= k).all(ok),
        residuals,
    })
}
