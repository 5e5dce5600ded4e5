use crate::scalar::{lit, Real};

/// Radial description of a unit circle, `c(θ) = r(θ)(cos θ, sin θ)`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Radial<T> {
    Euclidean,
    Lp(T),
    Fourier(Vec<T>),
}

impl<T: Real> Radial<T> {
    /// Returns `(r, r', r'')` at `theta`.
    pub(crate) fn eval(&self, theta: T) -> (T, T, T) {
        match self {
            Radial::Euclidean => (T::one(), T::zero(), T::zero()),
            Radial::Fourier(a) => {
                let mut r = T::zero();
                let mut r1 = T::zero();
                let mut r2 = T::zero();
                for (k, &ak) in a.iter().enumerate() {
                    if k == 0 {
                        r = r + ak;
                        continue;
                    }
                    let m: T = lit(2.0 * k as f64);
                    let (s, c) = (m * theta).sin_cos();
                    r = r + ak * c;
                    r1 = r1 - ak * m * s;
                    r2 = r2 - ak * m * m * c;
                }
                (r, r1, r2)
            }
            Radial::Lp(p) => lp(*p, theta),
        }
    }
}

// Powers of |cos| and |sin| are floored at the smallest positive value so
// that negative exponents stay finite at axis points; where a factor of
// (p - 1) or the sine/cosine itself vanishes the product is then exact.
fn lp<T: Real>(p: T, theta: T) -> (T, T, T) {
    let (sn, cs) = theta.sin_cos();
    let tiny = T::min_positive_value();
    let a = cs.abs().max(tiny);
    let b = sn.abs().max(tiny);
    let one = T::one();
    let two: T = lit(2.0);
    let sgn = |x: T| {
        if x > T::zero() {
            one
        } else if x < T::zero() {
            -one
        } else {
            T::zero()
        }
    };
    let ap = cs.abs().powf(p);
    let bp = sn.abs().powf(p);
    let s = ap + bp;
    let s1 = p * (b.powf(p - one) * sgn(sn) * cs - a.powf(p - one) * sgn(cs) * sn);
    let s2 = p
        * ((p - one) * b.powf(p - two) * cs * cs - bp + (p - one) * a.powf(p - two) * sn * sn - ap);
    let e = -one / p;
    let r = s.powf(e);
    let r1 = e * s.powf(e - one) * s1;
    let r2 = e * ((e - one) * s.powf(e - two) * s1 * s1 + s.powf(e - one) * s2);
    (r, r1, r2)
}
