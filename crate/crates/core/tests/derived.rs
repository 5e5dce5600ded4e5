mod common;

use common::*;
use legendre_core::analysis::singularity_report;
use legendre_core::derived::*;
use legendre_core::numeric::geom::{directed_hausdorff, hausdorff};
use legendre_core::Vec2;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

fn singular_count(l: &L) -> usize {
    let r = singularity_report(l, &l.curvature_pair().unwrap()).unwrap();
    r.counts.cusps + r.counts.degenerate_singularities
}

#[test]
fn parallels() {
    let a = astroid();
    let same = parallel(&a, 0.0).unwrap();
    assert!(max_by(a.grid(), |t| same.gamma(t).dist(a.gamma(t))) < 1e-15);

    let c = circle(1.0);
    let p = parallel(&c, -1.0).unwrap();
    assert!(max_by(c.grid(), |t| p.gamma(t).len()) < 1e-12);
    let cp = c.curvature_pair().unwrap();
    assert!(max_by(0..cp.len(), |i| (cp.alpha[i] - cp.kappa[i]).abs()) < 1e-7);

    // α + 0.3κ = (3/2) sin 2t − 0.3 vanishes where sin 2t = 0.2.
    let p = parallel(&a, 0.3).unwrap();
    let r = singularity_report(&p, &p.curvature_pair().unwrap()).unwrap();
    let s = 0.2f64.asin() / 2.0;
    let expect = [s, FRAC_PI_2 - s, PI + s, 3.0 * FRAC_PI_2 - s];
    assert_eq!(r.cusps.len(), 4);
    for (c, e) in r.cusps.iter().zip(expect) {
        assert!((c.t - e).abs() < 1e-6, "{} vs {e}", c.t);
    }
}

#[test]
fn ellipse_evolute() {
    let l = ellipse();
    let ev = evolute(&l).unwrap();
    assert!(ev.point(0.0).dist(Vec2::new(1.5, 0.0)) < 1e-6);
    let closed_form = |t: f64| Vec2::new(1.5 * t.cos().powi(3), -3.0 * t.sin().powi(3));
    assert!(max_by(l.grid(), |t| ev.point(t).dist(closed_form(t))) < 1e-6);

    // The evolute moves along η.
    let h = 1e-5;
    for t in [0.3, 1.0, 2.2, 4.0, 5.5] {
        let de = (ev.point(t + h) - ev.point(t - h)) / (2.0 * h);
        let eta = l.eta(t);
        assert!(de.cross(eta).abs() < 1e-4 * de.len().max(1.0), "t {t}");
    }

    let cp = ev.frame.curvature_pair().unwrap();
    let (da, dk) = ev.curvature_mismatch(&cp, 1e-3);
    assert!(da < 1e-4 && dk < 1e-4, "{da:e} {dk:e}");

    let sweep =
        evolute_as_parallel_singularities(&l, &default_d_grid(&l.curvature_pair().unwrap()))
            .unwrap();
    let hd = hausdorff(&sweep, true, &ev.points(), true);
    assert!(hd < 1e-3, "{hd:e}");

    for t in [0.0, 0.7, 2.0, 3.3] {
        let (f, df) = normal_envelope_residual(&l, t, ev.point(t)).unwrap();
        assert!(f.abs() < 1e-8 && df.abs() < 1e-8);
        let (f, df) = normal_envelope_residual(&l, t, ev.point(t) + Vec2::new(0.1, 0.0)).unwrap();
        assert!(f.abs().max(df.abs()) > 1e-3);
    }
}

#[test]
fn astroid_evolute() {
    let l = astroid();
    let ev = evolute(&l).unwrap();
    for t in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        assert!(ev.point(t).dist(l.gamma(t)) < 1e-7);
    }
    // e = γ + (3/2) sin 2t (sin t, cos t): an astroid twice the size, turned by 45°.
    let e = |t: f64| {
        Vec2::new(t.cos().powi(3), t.sin().powi(3))
            + Vec2::new(t.sin(), t.cos()) * (1.5 * (2.0 * t).sin())
    };
    assert!(max_by(l.grid(), |t| ev.point(t).dist(e(t))) < 1e-6);
    let cp = ev.frame.curvature_pair().unwrap();
    let (da, dk) = ev.curvature_mismatch(&cp, 1e-3);
    assert!(da < 1e-4 && dk < 1e-4, "{da:e} {dk:e}");
    let sweep =
        evolute_as_parallel_singularities(&l, &default_d_grid(&l.curvature_pair().unwrap()))
            .unwrap();
    assert!(hausdorff(&sweep, true, &ev.points(), true) < 1e-3);
}

#[test]
fn unit_circle_evolutes_collapse() {
    for plane in [euclid(), l3()] {
        let l = unit_circle_of(&plane);
        let ev = evolute(&l).unwrap();
        assert!(max_by(l.grid(), |t| ev.point(t).len()) < 1e-9);
        for t in [0.2, 1.7, 4.4] {
            let (f, df) = normal_envelope_residual(&l, t, Vec2::new(0.0, 0.0)).unwrap();
            assert!(f.abs() < 1e-8 && df.abs() < 1e-6);
        }
    }
}

#[test]
fn evolute_needs_nonvanishing_curvature() {
    let l = open(euclid(), (-1.0, 1.0), |t| Vec2::new(t, t * t * t));
    assert!(matches!(
        evolute(&l),
        Err(legendre_core::Error::KappaVanishes { .. })
    ));
}

#[test]
fn circle_involutes() {
    let l = circle(1.0);
    let base = involute(&l, 0.0).unwrap();
    for d in [0.0, 0.5, -1.0] {
        let inv = involute(&l, d).unwrap();
        let back = evolute(&inv.legendre).unwrap();
        assert!(max_by(inv.t.iter().copied(), |t| back.point(t).dist(l.gamma(t))) < 1e-4);
        assert!(
            max_by(inv.t.iter().copied(), |t| {
                (inv.legendre.gamma(t) - base.legendre.gamma(t)).dist(l.xi(t) * d)
            }) < 1e-9
        );
        let closed_form = |t: f64| l.gamma(t) + l.xi(t) * (d - t);
        assert!(
            max_by(inv.t.iter().copied(), |t| inv
                .legendre
                .gamma(t)
                .dist(closed_form(t)))
                < 1e-9
        );
    }
    let inv = involute(&l, 0.5).unwrap();
    let r = singularity_report(&inv.legendre, &inv.legendre.curvature_pair().unwrap()).unwrap();
    assert_eq!(r.cusps.len(), 1);
    assert!((r.cusps[0].t - 0.5).abs() < 1e-6);
}

#[test]
fn astroid_involutes_round_trip() {
    let l = astroid();
    for d in [0.0, 0.5, -1.0] {
        let inv = involute(&l, d).unwrap();
        let back = evolute(&inv.legendre).unwrap();
        assert!(max_by(inv.t.iter().copied(), |t| back.point(t).dist(l.gamma(t))) < 1e-4);
    }
}

#[test]
fn vertex_counts_bound_singularities() {
    let l = astroid();
    let r = singularity_report(&l, &l.curvature_pair().unwrap()).unwrap();
    assert!(r.counts.regular_vertices >= 4);
    let sigma = r.counts.cusps;
    assert!(sigma <= r.counts.vertices);
    for d in [0.0, 0.5, -1.0] {
        assert!(singular_count(&involute(&l, d).unwrap().legendre) <= sigma);
    }
}

#[test]
fn involute_needs_nonvanishing_curvature() {
    let l = maslov_front([0.0, 1.0, 2.0]);
    assert!(matches!(
        involute(&l, 0.0),
        Err(legendre_core::Error::KappaVanishes { .. })
    ));
}

#[test]
fn vertex_residuals() {
    let e = ellipse();
    assert!(vertex_residual(&e, 0.0).unwrap().abs() < 1e-6);
    assert!(vertex_residual(&e, PI / 5.0).unwrap().abs() > 1e-3);
    // With η = γ; the induced normal carries Newton noise that η″ amplifies.
    let c = unit_circle_of(&euclid());
    let r = vertex_residual(&c, 1.3).unwrap();
    assert!(r.abs() < 1e-8, "{r:e}");
}

#[test]
fn osculating_diagnostics() {
    let o = osculating_data(&circle(2.0), 0.8).unwrap();
    assert!(o.center.len() < 1e-6 && (o.radius - 2.0).abs() < 1e-6);
    assert!(o.d1.abs() < 1e-6 && o.d2.abs() < 1e-6);

    let e = ellipse();
    let o = osculating_data(&e, 0.0).unwrap();
    assert!(o.center.dist(Vec2::new(1.5, 0.0)) < 1e-6 && (o.radius - 0.5).abs() < 1e-6);
    for t in [0.0, 0.9, 2.6] {
        let o = osculating_data(&e, t).unwrap();
        assert!(o.d1.abs() < 1e-4 && o.d2.abs() < 1e-4);
        let (d1, d2) = distance_squared_derivatives(&e, t, o.center + Vec2::new(0.2, 0.1)).unwrap();
        assert!(d1.abs().max(d2.abs()) > 1e-2);
    }

    let plane = l3();
    let c = unit_circle_of(&plane);
    for t in [0.4, 1.9, 3.0, 5.1] {
        let o = osculating_data(&c, t).unwrap();
        assert!(o.center.len() < 1e-6 && (o.radius - 1.0).abs() < 1e-6);
        assert!(o.d1.abs() < 1e-4 && o.d2.abs() < 1e-4);
        let (d1, d2) = distance_squared_derivatives(&c, t, Vec2::new(0.2, -0.1)).unwrap();
        assert!(d1.abs().max(d2.abs()) > 1e-2);
    }
}

fn central(r: &PedalResult<f64>, t: f64) -> Vec2<f64> {
    let h = 1e-5 * r.curve.span();
    (r.curve.position(t + h) - r.curve.position(t - h)) / (2.0 * h)
}

#[test]
fn euclidean_pedals() {
    let c = circle(1.0);
    let o = pedal(&c, Vec2::new(0.0, 0.0)).unwrap();
    assert!(max_by(c.grid(), |t| o.curve.position(t).dist(c.gamma(t))) < 1e-12);

    let r = pedal(&c, Vec2::new(1.0, 0.0)).unwrap();
    assert!(r.p_on_curve);
    assert!(r.curve.position(FRAC_PI_2).dist(Vec2::new(1.0, 1.0)) < 1e-9);
    assert!(r.curve.position(PI).dist(Vec2::new(-1.0, 0.0)) < 1e-9);
    for t in [0.3, 1.2, 2.8, 4.6] {
        let pe = pedal_envelope_residual(&c, r.p, t, c.gamma(t)).unwrap();
        assert!(pe.f.abs() < 1e-6 && pe.df.abs() < 1e-6);
        let off = pedal_envelope_residual(&c, r.p, t, c.gamma(t) + c.eta(t) * 0.05).unwrap();
        assert!(off.f.abs().max(off.df.abs()) > 1e-3);
    }
    for t in (0..97).map(|i| TAU * (i as f64 + 0.25) / 97.0) {
        let an = pedal_derivative(&c, r.p, t).unwrap();
        assert!(an.dist(central(&r, t)) < 1e-4 * 2.0);
    }
}

#[test]
fn pedal_singularities_are_curvature_zeros() {
    let l = maslov_front([0.0, 1.0, 2.0]);
    let r = pedal(&l, Vec2::new(0.3, -2.0)).unwrap();
    assert!(!r.p_on_curve);
    assert_eq!(r.singular.len(), 2);
    assert!(r.singular[0].abs() < 1e-8 && (r.singular[1] - PI).abs() < 1e-8);
    let frontal = r.frontal.as_ref().unwrap();
    assert!(frontal.residual() < 1e-5);
    let scale = max_by(r.t.iter().copied(), |t| r.curve.position(t).len());
    for t in (0..61).map(|i| TAU * (i as f64 + 0.5) / 61.0) {
        let an = pedal_derivative(&l, r.p, t).unwrap();
        assert!(an.dist(central(&r, t)) < 1e-4 * scale);
    }
}

#[test]
fn lp_pedal_of_the_unit_circle() {
    assert!(lp_pedal_branch(3.0, 1.0).dist(Vec2::new(1.0, 1.0)) < 1e-15);
    let half = lp_pedal_branch(3.0, 0.5);
    let exact = 2f64.powf(-1.0 / 3.0) - 0.5;
    assert!((half.x - exact).abs() < 1e-14 && (half.y - (1.0 + exact)).abs() < 1e-14);
    assert!((half.x - 0.29370).abs() < 1e-5 && (half.y - 1.29370).abs() < 1e-5);

    let plane = l3();
    let l = unit_circle_of(&plane);
    let r = pedal(&l, Vec2::new(0.0, 1.0)).unwrap();
    let sampled: Vec<Vec2<f64>> = (0..4096)
        .map(|i| r.curve.position(TAU * i as f64 / 4096.0))
        .collect();
    let printed = lp_pedal_points(3.0, 4096);
    let forward = directed_hausdorff(&sampled, &printed, true);
    let backward = directed_hausdorff(&printed, &sampled, true);
    assert!(
        forward < 1e-4 && backward < 1e-4,
        "{forward:e} {backward:e}"
    );

    for t in (0..89).map(|i| TAU * i as f64 / 89.0) {
        let an = pedal_derivative(&l, r.p, t).unwrap();
        assert!(an.dist(central(&r, t)) < 1e-4 * 2.0, "t {t}");
        let pe = pedal_envelope_residual(&l, r.p, t, l.gamma(t)).unwrap();
        assert!(pe.f.abs() < 1e-4 && pe.df.abs() < 1e-4);
    }
    // The feet are Birkhoff orthogonal to the tangent direction.
    for t in [0.3, 2.0, 4.0] {
        let x = r.curve.position(t) - r.p;
        assert!(plane
            .is_birkhoff_orthogonal(x / plane.norm(x), l.xi(t), 1e-6)
            .unwrap());
    }
}
