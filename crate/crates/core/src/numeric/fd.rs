use crate::scalar::{lit, Real};
use crate::vector::Linear;

/// Fornberg weights for the `order`-th derivative at `z` from nodes `x`.
pub fn weights<T: Real>(z: T, x: &[T], order: usize) -> Vec<T> {
    let n = x.len();
    let mut c = vec![vec![T::zero(); order + 1]; n];
    let mut c1 = T::one();
    let mut c4 = x[0] - z;
    c[0][0] = T::one();
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 = c2 * c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let kk: T = lit(k as f64);
                    c[i][k] = c1 * (kk * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                let kk: T = lit(k as f64);
                c[j][k] = (c4 * c[j][k] - kk * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

fn half_width(order: usize) -> i32 {
    if order <= 2 {
        2
    } else {
        3
    }
}

/// Finite-difference derivative of `f` at `t`.
///
/// Central stencils of fourth order are used in the interior (and always for
/// periodic functions, where `f` is expected to wrap its argument). Near an
/// open endpoint the stencil becomes one-sided with `order + 4` nodes.
pub fn derivative<T, V, F>(f: F, t: T, order: usize, h: T, lo: T, hi: T, periodic: bool) -> V
where
    T: Real,
    V: Linear<T>,
    F: Fn(T) -> V,
{
    if order == 0 {
        return f(t);
    }
    let m = half_width(order);
    let mh = h * lit(m as f64);
    let nodes: Vec<T> = if periodic || (t - mh >= lo && t + mh <= hi) {
        (-m..=m).map(|k| lit::<T>(k as f64)).collect()
    } else {
        let n = order + 4;
        if t - mh < lo {
            (0..n).map(|j| (lo - t) / h + lit(j as f64)).collect()
        } else {
            (0..n).map(|j| (hi - t) / h - lit(j as f64)).collect()
        }
    };
    let w = weights(T::zero(), &nodes, order);
    let scale = h.powi(order as i32);
    let mut acc = V::zero_value();
    for (x, wi) in nodes.iter().zip(w) {
        if wi != T::zero() {
            acc = acc + f(t + *x * h) * wi;
        }
    }
    acc * (T::one() / scale)
}

/// Fourth-order derivative of uniformly spaced samples.
pub fn grid_derivative<T: Real>(values: &[T], step: T, closed: bool) -> Vec<T> {
    let n = values.len();
    if n < 5 {
        return vec![T::zero(); n];
    }
    let central = weights(
        T::zero(),
        &[lit(-2.0), lit(-1.0), T::zero(), lit(1.0), lit(2.0)],
        1,
    );
    let mut out = vec![T::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let idx = |k: i64| -> Option<usize> {
            let j = i as i64 + k;
            if closed {
                Some(j.rem_euclid(n as i64) as usize)
            } else if j >= 0 && j < n as i64 {
                Some(j as usize)
            } else {
                None
            }
        };
        if let (Some(_), Some(_)) = (idx(-2), idx(2)) {
            let mut acc = T::zero();
            for (k, w) in (-2..=2).zip(central.iter()) {
                acc = acc + values[idx(k).unwrap()] * *w;
            }
            *slot = acc / step;
        } else {
            let start = if i < 2 { 0 } else { n - 5 };
            let nodes: Vec<T> = (0..5)
                .map(|j| lit::<T>(start as f64 + j as f64 - i as f64))
                .collect();
            let w = weights(T::zero(), &nodes, 1);
            let mut acc = T::zero();
            for j in 0..5 {
                acc = acc + values[start + j] * w[j];
            }
            *slot = acc / step;
        }
    }
    out
}
