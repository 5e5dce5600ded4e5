mod common;

use common::*;
use legendre_core::synthesis::*;
use legendre_core::{Mat2, Vec2};
use std::f64::consts::TAU;

fn pair_error(l: &L, alpha: impl Fn(f64) -> f64, kappa: impl Fn(f64) -> f64) -> (f64, f64) {
    let cp = l.curvature_pair().unwrap();
    (
        max_by(0..cp.len(), |i| (cp.alpha[i] - alpha(cp.t[i])).abs()),
        max_by(0..cp.len(), |i| (cp.kappa[i] - kappa(cp.t[i])).abs()),
    )
}

#[test]
fn unit_circle_from_constant_pair() {
    let spec = SynthesisSpec::new(
        |_| 1.0,
        |_| 1.0,
        (0.0, TAU),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 0.0),
    )
    .closed(true);
    let l = synthesize(&euclid(), &spec).unwrap();
    assert!(max_by(l.grid(), |t| l.gamma(t).dist(Vec2::new(t.cos(), t.sin()))) < 1e-7);
    let (ea, ek) = pair_error(&l, |_| 1.0, |_| 1.0);
    assert!(ea < 1e-5 && ek < 1e-5);
}

#[test]
fn astroid_from_its_pair() {
    let alpha = |t: f64| 3.0 * t.sin() * t.cos();
    let spec = SynthesisSpec::new(
        alpha,
        |_| -1.0,
        (0.0, TAU),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
    )
    .closed(true);
    let l = synthesize(&euclid(), &spec).unwrap();
    let d = max_by(l.grid(), |t| {
        l.gamma(t).dist(Vec2::new(t.cos().powi(3), t.sin().powi(3)))
    });
    assert!(d < 1e-5, "{d:e}");
    let (ea, ek) = pair_error(&l, alpha, |_| -1.0);
    assert!(ea < 1e-5 && ek < 1e-5, "{ea:e} {ek:e}");
}

#[test]
fn trigonometric_pair_round_trip_and_order() {
    let alpha = |t: f64| 1.0 + 0.4 * t.cos() - 0.2 * (3.0 * t).sin();
    let kappa = |t: f64| 0.8 + 0.5 * (2.0 * t).sin();
    let build = |steps: usize| {
        let spec = SynthesisSpec::new(
            alpha,
            kappa,
            (0.0, 4.0),
            Vec2::new(0.2, -0.1),
            Vec2::new(0.6, 0.8),
        )
        .with_steps(steps)
        .with_samples(steps);
        synthesize(&euclid(), &spec).unwrap()
    };
    let l = build(4096);
    let (ea, ek) = pair_error(&l, alpha, kappa);
    assert!(ea < 1e-5 && ek < 1e-5, "{ea:e} {ek:e}");

    // Endpoint error against a fine reference: ~16× per halving.
    let reference = build(16384).gamma(4.0);
    let err: Vec<f64> = [256, 512, 1024]
        .iter()
        .map(|&m| build(m).gamma(4.0).dist(reference))
        .collect();
    for w in err.windows(2) {
        let ratio = w[0] / w[1];
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio} from {err:?}");
    }
}

#[test]
fn uniqueness_under_refinement() {
    let alpha = |t: f64| 1.0 + 0.3 * t.sin();
    let kappa = |t: f64| 1.2 - 0.4 * t.cos();
    let at = |steps: usize| {
        let spec = SynthesisSpec::new(
            alpha,
            kappa,
            (0.0, 3.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
        )
        .with_steps(steps);
        synthesize(&l3(), &spec).unwrap()
    };
    let (a, b) = (at(2048), at(4096));
    assert!(max_by(a.grid(), |t| a.gamma(t).dist(b.gamma(t))) < 1e-8);
}

#[test]
fn minkowski_circle_in_l3() {
    let plane = l3();
    let v = plane.boundary(0.3);
    let spec = SynthesisSpec::new(|_| 2.0, |_| 1.0, (0.0, 7.0), Vec2::new(0.5, 0.2), v);
    let l = synthesize(&plane, &spec).unwrap();
    let m = l.gamma(0.0) - l.eta(0.0) * 2.0;
    let dev = max_by(l.grid(), |t| (plane.norm(l.gamma(t) - m) - 2.0).abs());
    assert!(dev < 1e-5, "{dev:e}");
    let (ea, ek) = pair_error(&l, |_| 2.0, |_| 1.0);
    assert!(ea < 1e-5 && ek < 1e-5);
}

#[test]
fn isometries() {
    let c = circle(1.0);
    let cp = c.curvature_pair().unwrap();
    let r = apply_linear_map(&c, Mat2::rotation(37f64.to_radians()), true).unwrap();
    let rp = r.curvature_pair().unwrap();
    assert!(
        max_by(0..cp.len(), |i| (cp.alpha[i] - rp.alpha[i])
            .abs()
            .max((cp.kappa[i] - rp.kappa[i]).abs()))
            < 1e-8
    );

    let plane = l3();
    let spec = SynthesisSpec::new(
        |t: f64| 1.0 + 0.5 * t.cos(),
        |t: f64| 0.7 + 0.2 * (2.0 * t).sin(),
        (0.0, 5.0),
        Vec2::new(0.0, 0.0),
        plane.boundary(1.0),
    );
    let l = synthesize(&plane, &spec).unwrap();
    let cp = l.curvature_pair().unwrap();
    for (m, sign) in [
        (Mat2::new(0.0, -1.0, 1.0, 0.0), 1.0),
        (Mat2::new(0.0, 1.0, 1.0, 0.0), -1.0),
    ] {
        let moved = apply_linear_map(&l, m, true).unwrap();
        let mp = moved.curvature_pair().unwrap();
        let worst = max_by(0..cp.len(), |i| {
            (mp.alpha[i] - sign * cp.alpha[i])
                .abs()
                .max((mp.kappa[i] - sign * cp.kappa[i]).abs())
        });
        assert!(worst < 1e-7, "{worst:e}");
    }
    assert!(apply_linear_map(&l, Mat2::rotation(37f64.to_radians()), true).is_err());
    assert!(isometry_defect(&plane, &Mat2::new(0.0, 1.0, 1.0, 0.0)) < 1e-12);
}

#[test]
fn closure_of_the_maslov_fixture() {
    let l = maslov_front([0.0, 1.0, 2.0]);
    assert!(l.gamma(0.0).dist(l.gamma(TAU - 1e-12)) < 1e-6);
}
