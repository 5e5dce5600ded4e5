mod common;

use common::{euclid, l3};
use legendre_core::numeric::roots::golden_min;
use legendre_core::plane::{transfer_unit, NormSpec, NormedPlane};
use legendre_core::Vec2;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

/// Tangent direction at the unit vector `x` by brute force: the direction
/// `y` that maximises `min_s ‖x + s·y‖` over the half turn `[x, y] > 0`.
fn birkhoff_oracle(plane: &NormedPlane<f64>, x: Vec2<f64>) -> Vec2<f64> {
    let dir = |phi: f64| Vec2::new(phi.cos(), phi.sin());
    let dip = |phi: f64| {
        let y = dir(phi);
        golden_min(|s: f64| plane.norm(x + y * s), -2.0, 2.0, 200).1
    };
    let a = x.y.atan2(x.x);
    dir(golden_min(|phi: f64| -dip(phi), a + 1e-3, a + PI - 1e-3, 200).0)
}

fn angle_gap(u: Vec2<f64>, v: Vec2<f64>) -> f64 {
    u.cross(v).atan2(u.dot(v)).abs()
}

#[test]
fn worked_values() {
    let e = euclid();
    let p = l3();
    let c = 2f64.powf(-1.0 / 3.0);
    assert!((e.norm(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-12);
    assert!((p.norm(Vec2::new(1.0, 1.0)) - 1.259921).abs() < 1e-6);
    assert_eq!(p.norm(Vec2::new(0.0, 0.0)), 0.0);
    assert!(
        p.birkhoff(Vec2::new(1.0, 0.0))
            .unwrap()
            .dist(Vec2::new(0.0, 1.0))
            < 1e-9
    );
    assert!(p.birkhoff(Vec2::new(c, c)).unwrap().dist(Vec2::new(-c, c)) < 1e-9);
    assert!(
        p.birkhoff_inverse(Vec2::new(-c, c))
            .unwrap()
            .dist(Vec2::new(c, c))
            < 1e-8
    );
    assert!((p.antinorm(Vec2::new(1.0, 0.0)) - 1.0).abs() < 1e-9);
    assert!((p.antinorm(Vec2::new(1.0, 1.0)) - 1.587401).abs() < 1e-6);
    assert!((e.antinorm(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-12);
    assert!((e.total_length() - TAU).abs() < 1e-9);
    let len = p.total_length();
    assert!((6.0..=8.0).contains(&len), "{len}");
    assert!(p.rho(Vec2::new(1.0, 0.0)).unwrap() < 1e-4);
    assert!(p.rho(Vec2::new(c, c)).unwrap() > 0.1);
    assert!(e.radon_defect() < 1e-9);
    assert!(p.radon_defect() > 1e-3);
    let to = transfer_unit(&e, &p, Vec2::new(1.0, 1.0) / 2f64.sqrt()).unwrap();
    assert!(to.dist(Vec2::new(c, c)) < 1e-9);
}

#[test]
fn rho_against_chord_ratio() {
    // ρ is the rate of the Birkhoff map in arc length: compare with the
    // ratio of norm chords of b∘c and c.
    let h = 1e-4;
    for plane in [euclid(), l3()] {
        for theta in [0.3, PI / 4.0, 2.0, 4.0] {
            let b = |t: f64| plane.birkhoff(plane.boundary(t)).unwrap();
            let chord = |f: &dyn Fn(f64) -> Vec2<f64>| plane.norm(f(theta + h) - f(theta - h));
            let oracle = chord(&b) / chord(&|t| plane.boundary(t));
            let rho = plane.rho(plane.boundary(theta)).unwrap();
            assert!(
                (rho - oracle).abs() < 1e-6,
                "theta {theta}: {rho} vs {oracle}"
            );
        }
    }
    let c = 2f64.powf(-1.0 / 3.0);
    let diagonal = l3().rho(Vec2::new(c, c)).unwrap();
    assert!((diagonal - 2.0).abs() < 1e-6, "{diagonal}");
}

#[test]
fn rejections() {
    assert!(NormedPlane::build(NormSpec::lp(1.0)).is_err());
    assert!(NormedPlane::build(NormSpec::fourier_radial(vec![1.0, 0.0, -2.0])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn norm_is_homogeneous_and_subadditive(x in -5.0..5.0f64, y in -5.0..5.0f64, u in -5.0..5.0f64, w in -5.0..5.0f64, s in -3.0..3.0f64) {
        let p = l3();
        let a = Vec2::new(x, y);
        let b = Vec2::new(u, w);
        prop_assert!((p.norm(a * s) - s.abs() * p.norm(a)).abs() <= 1e-9 * (1.0 + p.norm(a)));
        prop_assert!(p.norm(a + b) <= p.norm(a) + p.norm(b) + 1e-9);
    }

    #[test]
    fn birkhoff_map_matches_oracle(theta in 0.0..TAU) {
        for plane in [euclid(), l3()] {
            let x = plane.boundary(theta);
            let b = plane.birkhoff(x).unwrap();
            let o = birkhoff_oracle(&plane, x);
            prop_assert!(angle_gap(b, o) < 1e-6, "{:?} vs {:?}", b, o);
        }
    }

    #[test]
    fn birkhoff_round_trip(theta in 0.0..TAU) {
        for plane in [euclid(), l3()] {
            let w = plane.birkhoff(plane.boundary(theta)).unwrap();
            let back = plane.birkhoff(plane.birkhoff_inverse(w).unwrap()).unwrap();
            prop_assert!(back.dist(w) < 1e-7);
        }
    }

    #[test]
    fn antinorm_matches_sampled_sup(x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let p = l3();
        let v = Vec2::new(x, y);
        prop_assert!((p.antinorm(v) - p.antinorm_sampled(v)).abs() < 1e-6 * (1.0 + p.antinorm(v)));
    }

    #[test]
    fn euclidean_rho_is_one(theta in 0.0..TAU) {
        let e = euclid();
        prop_assert!((e.rho(e.boundary(theta)).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn orthogonality_of_the_birkhoff_map(theta in 0.0..TAU) {
        let p = l3();
        let x = p.boundary(theta);
        let y = p.birkhoff(x).unwrap();
        prop_assert!(p.is_birkhoff_orthogonal(x, y, 1e-8).unwrap());
    }
}
