use crate::numeric::fd::{grid_derivative, weights};
use crate::scalar::{lit, rem_pos, Real};
use crate::vector::Linear;

#[inline]
fn basis<T: Real>(s: T) -> (T, T, T, T) {
    let s2 = s * s;
    let s3 = s2 * s;
    let two: T = lit(2.0);
    let three: T = lit(3.0);
    (
        two * s3 - three * s2 + T::one(),
        s3 - two * s2 + s,
        three * s2 - two * s3,
        s3 - s2,
    )
}

/// Cubic Hermite segment on `[t0, t1]` with end values and slopes.
#[inline]
pub fn hermite<T: Real, V: Linear<T>>(t0: T, t1: T, y0: V, y1: V, d0: V, d1: V, t: T) -> V {
    let h = t1 - t0;
    let (a, b, c, d) = basis((t - t0) / h);
    y0 * a + d0 * (b * h) + y1 * c + d1 * (d * h)
}

/// Piecewise cubic Hermite interpolant through sorted nodes.
#[derive(Clone, Debug)]
pub struct HermiteTable<T, V> {
    t: Vec<T>,
    y: Vec<V>,
    d: Vec<V>,
}

impl<T: Real, V: Linear<T>> HermiteTable<T, V> {
    pub fn new(t: Vec<T>, y: Vec<V>, d: Vec<V>) -> Self {
        assert!(t.len() >= 2 && t.len() == y.len() && t.len() == d.len());
        Self { t, y, d }
    }

    pub fn nodes(&self) -> &[T] {
        &self.t
    }

    fn cell(&self, x: T) -> usize {
        let n = self.t.len();
        let i = self.t.partition_point(|&ti| ti <= x);
        i.saturating_sub(1).min(n - 2)
    }

    pub fn eval(&self, x: T) -> V {
        let i = self.cell(x);
        hermite(
            self.t[i],
            self.t[i + 1],
            self.y[i],
            self.y[i + 1],
            self.d[i],
            self.d[i + 1],
            x,
        )
    }
}

fn thomas<T: Real, V: Linear<T>>(a: &[T], b: &[T], c: &[T], r: &[V]) -> Vec<V> {
    let n = b.len();
    let mut cp = vec![T::zero(); n];
    let mut dp = vec![V::zero_value(); n];
    cp[0] = c[0] / b[0];
    dp[0] = r[0] * (T::one() / b[0]);
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (r[i] + dp[i - 1] * (-a[i])) * (T::one() / m);
    }
    let mut x = dp.clone();
    for i in (0..n - 1).rev() {
        x[i] = dp[i] + x[i + 1] * (-cp[i]);
    }
    x
}

fn cyclic<T: Real, V: Linear<T>>(a: &[T], b: &[T], c: &[T], r: &[V]) -> Vec<V> {
    let n = b.len();
    let alpha = c[n - 1];
    let beta = a[0];
    let gamma = -b[0];
    let mut bb = b.to_vec();
    bb[0] = b[0] - gamma;
    bb[n - 1] = b[n - 1] - alpha * beta / gamma;
    let x = thomas(a, &bb, c, r);
    let mut u = vec![T::zero(); n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(a, &bb, c, &u);
    let denom = T::one() + z[0] + beta * z[n - 1] / gamma;
    let fact = (x[0] + x[n - 1] * (beta / gamma)) * (T::one() / denom);
    x.iter().zip(z).map(|(xi, zi)| *xi + fact * (-zi)).collect()
}

/// Slopes of the C² cubic spline through `(t, y)`.
///
/// Closed data are treated as periodic with the given period; open data use
/// clamped ends whose slopes come from one-sided five-point stencils.
pub fn spline_slopes<T: Real, V: Linear<T>>(t: &[T], y: &[V], period: Option<T>) -> Vec<V> {
    let n = t.len();
    assert!(n >= 5, "spline needs at least five samples");
    let three: T = lit(3.0);
    let two: T = lit(2.0);
    match period {
        Some(p) => {
            let h: Vec<T> = (0..n)
                .map(|i| {
                    if i + 1 < n {
                        t[i + 1] - t[i]
                    } else {
                        t[0] + p - t[i]
                    }
                })
                .collect();
            let delta: Vec<V> = (0..n)
                .map(|i| (y[(i + 1) % n] + y[i] * (-T::one())) * (T::one() / h[i]))
                .collect();
            let mut a = vec![T::zero(); n];
            let mut b = vec![T::zero(); n];
            let mut c = vec![T::zero(); n];
            let mut r = vec![V::zero_value(); n];
            for i in 0..n {
                let hp = h[(i + n - 1) % n];
                let hi = h[i];
                a[i] = T::one() / hp;
                b[i] = two * (T::one() / hp + T::one() / hi);
                c[i] = T::one() / hi;
                r[i] =
                    (delta[(i + n - 1) % n] * (T::one() / hp) + delta[i] * (T::one() / hi)) * three;
            }
            cyclic(&a, &b, &c, &r)
        }
        None => {
            let end_slope = |idx: &[usize], at: usize| -> V {
                let nodes: Vec<T> = idx.iter().map(|&j| t[j]).collect();
                let w = weights(t[at], &nodes, 1);
                let mut acc = V::zero_value();
                for (k, &j) in idx.iter().enumerate() {
                    acc = acc + y[j] * w[k];
                }
                acc
            };
            let d0 = end_slope(&[0, 1, 2, 3, 4], 0);
            let dn = end_slope(&[n - 5, n - 4, n - 3, n - 2, n - 1], n - 1);
            let m = n - 2;
            let mut a = vec![T::zero(); m];
            let mut b = vec![T::zero(); m];
            let mut c = vec![T::zero(); m];
            let mut r = vec![V::zero_value(); m];
            for k in 0..m {
                let i = k + 1;
                let hp = t[i] - t[i - 1];
                let hi = t[i + 1] - t[i];
                let dl = (y[i] + y[i - 1] * (-T::one())) * (T::one() / hp);
                let dr = (y[i + 1] + y[i] * (-T::one())) * (T::one() / hi);
                a[k] = T::one() / hp;
                b[k] = two * (T::one() / hp + T::one() / hi);
                c[k] = T::one() / hi;
                r[k] = (dl * (T::one() / hp) + dr * (T::one() / hi)) * three;
            }
            r[0] = r[0] + d0 * (-a[0]);
            r[m - 1] = r[m - 1] + dn * (-c[m - 1]);
            let inner = thomas(&a, &b, &c, &r);
            let mut out = Vec::with_capacity(n);
            out.push(d0);
            out.extend(inner);
            out.push(dn);
            out
        }
    }
}

/// Uniformly sampled scalar function with a C¹ cubic interpolant.
///
/// Slopes come from fourth-order differences of the samples; closed samples
/// wrap around the period `n * step`.
#[derive(Clone, Debug)]
pub struct Sampled<T> {
    pub t0: T,
    pub step: T,
    pub closed: bool,
    pub values: Vec<T>,
    pub slopes: Vec<T>,
}

impl<T: Real> Sampled<T> {
    pub fn new(t0: T, step: T, closed: bool, values: Vec<T>) -> Self {
        let slopes = grid_derivative(&values, step, closed);
        Self {
            t0,
            step,
            closed,
            values,
            slopes,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, i: usize) -> T {
        self.t0 + self.step * lit(i as f64)
    }

    pub fn period(&self) -> T {
        self.step * lit(self.values.len() as f64)
    }

    /// Maps `t` into the fundamental domain (closed samples only).
    pub fn wrap(&self, t: T) -> T {
        if self.closed {
            let p = self.period();
            let x = rem_pos(t - self.t0, p);
            // Points within roundoff of the seam belong to its start.
            if p - x <= p * lit(1e-13) {
                self.t0
            } else {
                self.t0 + x
            }
        } else {
            t
        }
    }

    pub fn eval(&self, t: T) -> T {
        let n = self.values.len();
        let t = self.wrap(t);
        let s = ((t - self.t0) / self.step).floor();
        let mut i = s.to_usize().unwrap_or(0);
        if self.closed {
            i = i.min(n - 1);
            let j = (i + 1) % n;
            let ti = self.node(i);
            hermite(
                ti,
                ti + self.step,
                self.values[i],
                self.values[j],
                self.slopes[i],
                self.slopes[j],
                t,
            )
        } else {
            if s < T::zero() {
                i = 0;
            }
            i = i.min(n - 2);
            hermite(
                self.node(i),
                self.node(i + 1),
                self.values[i],
                self.values[i + 1],
                self.slopes[i],
                self.slopes[i + 1],
                t,
            )
        }
    }
}
