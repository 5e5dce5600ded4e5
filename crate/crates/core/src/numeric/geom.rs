use crate::scalar::Real;
use crate::vector::Vec2;

/// Euclidean distance from `p` to the segment `ab`.
pub fn point_segment<T: Real>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let ab = b - a;
    let l2 = ab.dot(ab);
    if l2 == T::zero() {
        return p.dist(a);
    }
    let s = ((p - a).dot(ab) / l2).max(T::zero()).min(T::one());
    p.dist(a + ab * s)
}

/// Distance from `p` to a polyline (closed polylines include the last edge).
pub fn point_polyline<T: Real>(p: Vec2<T>, poly: &[Vec2<T>], closed: bool) -> T {
    match poly.len() {
        0 => T::infinity(),
        1 => p.dist(poly[0]),
        n => {
            let mut best = T::infinity();
            for i in 0..n - 1 {
                best = best.min(point_segment(p, poly[i], poly[i + 1]));
            }
            if closed {
                best = best.min(point_segment(p, poly[n - 1], poly[0]));
            }
            best
        }
    }
}

/// One-sided distance: the farthest point of `a` from the polyline `b`.
pub fn directed_hausdorff<T: Real>(a: &[Vec2<T>], b: &[Vec2<T>], b_closed: bool) -> T {
    a.iter()
        .map(|&p| point_polyline(p, b, b_closed))
        .fold(T::zero(), |m, d| m.max(d))
}

/// Symmetric Hausdorff distance between two sampled curves, each treated as
/// a polyline through its samples.
pub fn hausdorff<T: Real>(a: &[Vec2<T>], a_closed: bool, b: &[Vec2<T>], b_closed: bool) -> T {
    directed_hausdorff(a, b, b_closed).max(directed_hausdorff(b, a, a_closed))
}
