use crate::scalar::{lit, Real};

/// Bisection on a bracket with `f(a)` and `f(b)` of opposite sign.
pub fn bisect<T: Real>(mut f: impl FnMut(T) -> T, mut a: T, mut b: T, tol: T) -> T {
    let mut fa = f(a);
    if fa == T::zero() {
        return a;
    }
    for _ in 0..200 {
        let m = (a + b) * lit(0.5);
        if (b - a).abs() <= tol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    (a + b) * lit(0.5)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
///
/// Returns the minimizer and the minimum value.
pub fn golden_min<T: Real>(mut f: impl FnMut(T) -> T, mut a: T, mut b: T, iters: usize) -> (T, T) {
    let g: T = lit(0.618_033_988_749_894_8);
    let mut c = b - (b - a) * g;
    let mut d = a + (b - a) * g;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if (b - a).abs() <= T::epsilon() * (a.abs() + b.abs() + T::one()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * g;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * g;
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Newton iteration safeguarded by a shrinking bracket.
///
/// `f` returns the residual and its derivative. The bracket must satisfy
/// `f(a) <= 0 <= f(b)` for an increasing residual.
pub fn safe_newton<T: Real>(
    mut f: impl FnMut(T) -> (T, T),
    mut a: T,
    mut b: T,
    x0: T,
    tol: T,
) -> Option<T> {
    let mut x = if x0 > a && x0 < b {
        x0
    } else {
        (a + b) * lit(0.5)
    };
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == T::zero() {
            return Some(x);
        }
        if fx < T::zero() {
            a = x;
        } else {
            b = x;
        }
        let mut next = if dfx > T::zero() {
            x - fx / dfx
        } else {
            T::nan()
        };
        if !(next > a && next < b) {
            next = (a + b) * lit(0.5);
        }
        if (next - x).abs() <= tol || (b - a) <= tol {
            return Some(next);
        }
        x = next;
    }
    None
}
