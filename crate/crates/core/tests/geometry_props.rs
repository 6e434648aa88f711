use std::f64::consts::PI;

use morley::geometry::reflecting_similarity_from_correspondence;
use morley::{
    interior_angles, law_of_sines_residual, ray_intersect, similarity_from_correspondence, Point, Ray, Similarity, Vec2,
};
use proptest::prelude::*;
use rand::RngExt;

mod common;

#[test]
fn angle_sum_is_pi() {
    let mut rng = common::rng(21);
    for _ in 0..100_000 {
        let t = common::random_triangle(&mut rng);
        let s: f64 = interior_angles(&t).iter().sum();
        assert!((s - PI).abs() <= 1e-12, "{t:?}: sum {s}");
    }
}

#[test]
fn law_of_sines_holds() {
    let mut rng = common::rng(22);
    for _ in 0..100_000 {
        let t = common::random_triangle(&mut rng);
        let r = law_of_sines_residual(&t);
        assert!(r <= 1e-12, "{t:?}: residual {r}");
    }
}

#[test]
fn intersections_lie_on_both_lines() {
    let mut rng = common::rng(23);
    let mut checked = 0;
    while checked < 100_000 {
        let p = Point::new(rng.random_range(-100.0..100.0), rng.random_range(-100.0..100.0));
        let r1 = Ray::from_angle(
            Point::new(rng.random_range(-100.0..100.0), rng.random_range(-100.0..100.0)),
            rng.random_range(-PI..PI),
        )
        .unwrap();
        // second ray aimed through a point on the first
        let target = r1.at(rng.random_range(1.0..200.0));
        let Ok(r2) = Ray::through(p, target) else { continue };
        let Ok(x) = ray_intersect(&r1, &r2) else { continue };
        let scale = [r1.origin(), p, x]
            .iter()
            .map(|q| q.x.abs().max(q.y.abs()))
            .fold(1.0, f64::max);
        assert!(r1.line_distance(x) <= 1e-12 * scale, "{}", r1.line_distance(x));
        assert!(r2.line_distance(x) <= 1e-12 * scale, "{}", r2.line_distance(x));
        checked += 1;
    }
}

fn point() -> impl Strategy<Value = Point> {
    (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn correspondence_round_trip(p1 in point(), p2 in point(), q1 in point(), q2 in point(), reflect: bool) {
        prop_assume!(p1.distance(p2) > 1e-3 && q1.distance(q2) > 1e-3);
        let s = if reflect {
            reflecting_similarity_from_correspondence(p1, p2, q1, q2).unwrap()
        } else {
            similarity_from_correspondence(p1, p2, q1, q2).unwrap()
        };
        let scale = 1.0f64.max(q1.x.abs()).max(q1.y.abs()).max(q2.x.abs()).max(q2.y.abs());
        prop_assert!(s.apply(p1).distance(q1) <= 1e-12 * scale);
        prop_assert!(s.apply(p2).distance(q2) <= 1e-12 * scale);
        prop_assert_eq!(s.reflect(), reflect);
    }

    #[test]
    fn inverse_undoes(scale in 1e-2..1e2f64, rot in -PI..PI, tx in -10.0..10.0f64, ty in -10.0..10.0f64, reflect: bool, theta in -PI..PI) {
        let s = Similarity::new(scale, rot, Vec2::new(tx, ty), reflect).unwrap();
        let p = Point::new(theta.cos(), theta.sin());
        for composed in [s.compose(&s.inverse()), s.inverse().compose(&s)] {
            prop_assert!(composed.apply(p).distance(p) <= 1e-12);
        }
        prop_assert!(s.inverse().apply(s.apply(p)).distance(p) <= 1e-12);
    }
}
