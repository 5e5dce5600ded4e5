//! Sign-change detection on sampled functions.

use crate::numeric::interp::Sampled;
use crate::numeric::roots::{bisect, golden_min};
use crate::scalar::{lit, Real};

/// A refined zero crossing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing<T> {
    pub t: T,
    /// True when the function goes from negative to positive.
    pub rising: bool,
}

/// Result of a crossing scan.
#[derive(Clone, Debug, Default)]
pub struct Scan<T> {
    pub crossings: Vec<Crossing<T>>,
    /// True when no unmasked sample rises above the significance level, so
    /// the function is numerically zero on the whole grid.
    pub all_small: bool,
}

fn masked(mask: Option<&[bool]>, i: usize) -> bool {
    mask.is_some_and(|m| m[i])
}

/// Finds sign changes between significant samples.
///
/// A sample counts as significant when it exceeds ten times `floor`; sign
/// changes separated only by insignificant samples are merged into one
/// crossing, located by bisection on the cubic interpolant. A masked sample
/// between two significant ones suppresses the crossing.
pub fn scan<T: Real>(s: &Sampled<T>, floor: T, mask: Option<&[bool]>) -> Scan<T> {
    let n = s.len();
    let level = floor * lit(10.0);
    let sig = |i: usize| !masked(mask, i) && s.values[i].abs() > level;
    let first = match (0..n).find(|&i| sig(i)) {
        Some(i) => i,
        None => {
            return Scan {
                crossings: Vec::new(),
                all_small: true,
            }
        }
    };
    let mut out = Vec::new();
    let mut last = first;
    let mut blocked = false;
    let steps = if s.closed { n } else { n - first - 1 };
    for k in 1..=steps {
        let i = if s.closed { (first + k) % n } else { first + k };
        if masked(mask, i) {
            blocked = true;
            continue;
        }
        if !sig(i) {
            continue;
        }
        let vl = s.values[last];
        if !blocked && (vl < T::zero()) != (s.values[i] < T::zero()) {
            let mut gap = (i + n - last) % n;
            if gap == 0 {
                gap = n;
            }
            if !s.closed {
                gap = i - last;
            }
            let a = s.node(last);
            let b = a + s.step * lit(gap as f64);
            let tol = s.step * lit(1e-12);
            let t = bisect(|x| s.eval(x), a, b, tol);
            out.push(Crossing {
                t: s.wrap(t),
                rising: vl < T::zero(),
            });
        }
        last = i;
        blocked = false;
    }
    out.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    Scan {
        crossings: out,
        all_small: false,
    }
}

/// Finds zeros where the function touches zero without changing sign.
///
/// Candidates are local minima of |f| at or below `gate`; each is refined by
/// golden section on the interpolant and kept when the refined value is at or
/// below `tol`.
pub fn touches<T: Real>(s: &Sampled<T>, gate: T, tol: T, mask: Option<&[bool]>) -> Vec<T> {
    let n = s.len();
    let mut out = Vec::new();
    let lo = if s.closed { 0 } else { 1 };
    let hi = if s.closed { n } else { n.saturating_sub(1) };
    for i in lo..hi {
        let p = (i + n - 1) % n;
        let q = (i + 1) % n;
        if masked(mask, i) || masked(mask, p) || masked(mask, q) {
            continue;
        }
        let (vp, vi, vq) = (s.values[p], s.values[i], s.values[q]);
        if !(vi.abs() < vp.abs() && vi.abs() <= vq.abs()) || vi.abs() > gate {
            continue;
        }
        if (vp < T::zero()) != (vq < T::zero()) {
            continue;
        }
        let a = s.node(i) - s.step;
        let b = s.node(i) + s.step;
        let (t, v) = golden_min(|x| s.eval(x).abs(), a, b, 200);
        if v <= tol {
            out.push(s.wrap(t));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn sampled(n: usize, f: impl Fn(f64) -> f64) -> Sampled<f64> {
        let step = TAU / n as f64;
        Sampled::new(
            0.0,
            step,
            true,
            (0..n).map(|i| f(i as f64 * step)).collect(),
        )
    }

    #[test]
    fn crossings_of_sin2t_including_nodes() {
        let s = sampled(512, |t| (2.0 * t).sin());
        let r = scan(&s, 1e-12, None);
        let ts: Vec<f64> = r.crossings.iter().map(|c| c.t).collect();
        assert_eq!(ts.len(), 4);
        for (k, t) in ts.iter().enumerate() {
            assert!((t - k as f64 * PI / 2.0).abs() < 1e-9, "{t}");
        }
        assert!(r.crossings[0].rising);
        assert!(!r.crossings[1].rising);
    }

    #[test]
    fn constant_is_all_small() {
        let s = sampled(64, |_| 1e-14);
        assert!(scan(&s, 1e-12, None).all_small);
    }

    #[test]
    fn tangential_zero_is_touch() {
        let s = sampled(512, |t| 1.0 - (t - 1.0).cos());
        let r = scan(&s, 1e-12, None);
        assert!(r.crossings.is_empty());
        let tz = touches(&s, 1e-3, 1e-10, None);
        assert_eq!(tz.len(), 1);
        assert!((tz[0] - 1.0).abs() < 1e-4);
    }
}
