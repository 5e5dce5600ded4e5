use crate::scalar::{lit, Real};
use crate::vector::Linear;

const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

/// Eight-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss8<T: Real, V: Linear<T>>(f: impl Fn(T) -> V, a: T, b: T) -> V {
    let half = (b - a) * lit(0.5);
    let mid = (a + b) * lit(0.5);
    let mut acc = V::zero_value();
    for &(x, w) in &GL8 {
        let x: T = lit(x);
        let w: T = lit(w);
        acc = acc + (f(mid - half * x) + f(mid + half * x)) * w;
    }
    acc * half
}

/// Three-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss3<T: Real, V: Linear<T>>(f: impl Fn(T) -> V, a: T, b: T) -> V {
    let half = (b - a) * lit(0.5);
    let mid = (a + b) * lit(0.5);
    let x: T = lit(0.6f64.sqrt());
    let outer: T = lit(5.0 / 9.0);
    let inner: T = lit(8.0 / 9.0);
    (f(mid) * inner + (f(mid - half * x) + f(mid + half * x)) * outer) * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let v = gauss8(|x: f64| x.powi(15) + x.powi(14), 0.0, 1.0);
        assert!((v - (1.0 / 16.0 + 1.0 / 15.0)).abs() < 1e-15);
        let v = gauss3(|x: f64| x.powi(5), -1.0, 2.0);
        assert!((v - (64.0 - 1.0) / 6.0).abs() < 1e-13);
    }
}
