use std::f64::consts::{FRAC_PI_2, PI, TAU};

use proptest::prelude::*;
use rand::Rng;

use chebnet::hyperbolic::{
    exp_at, h_angle, h_cheb3, h_cheb3_minimax, h_distance, h_midpoint,
    right_triangle_identity_check, HyperbolicPoint, HyperbolicTriangle, Isometry,
};
use chebnet::lab::trial_rng;

fn point() -> impl Strategy<Value = HyperbolicPoint> {
    (0.0f64..3.0, 0.0f64..TAU).prop_map(|(r, t)| HyperbolicPoint::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn distance_is_a_metric(a in point(), b in point(), c in point()) {
        let ab = h_distance(&a, &b);
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(ab, h_distance(&b, &a));
        prop_assert_eq!(h_distance(&a, &a), 0.0);
        prop_assert!(ab <= h_distance(&a, &c) + h_distance(&c, &b) + 1e-9);
    }

    #[test]
    fn cheb3_contains_and_is_minimax(a in point(), b in point(), c in point()) {
        prop_assume!(h_distance(&a, &b) > 1e-3 && h_distance(&b, &c) > 1e-3 && h_distance(&a, &c) > 1e-3);
        let pts = [a, b, c];
        let (center, radius) = h_cheb3(&pts).unwrap();
        let worst = |q: &HyperbolicPoint| pts.iter().map(|p| h_distance(q, p)).fold(0.0, f64::max);
        prop_assert!(worst(&center) <= radius + 1e-9);
        for k in 0..10 {
            let t = k as f64 * TAU / 10.0 + 0.1;
            let moved = exp_at(&center, [1e-4 * t.cos(), 1e-4 * t.sin()]);
            prop_assert!(worst(&moved) >= radius - 1e-8);
        }
        let (_, oracle) = h_cheb3_minimax(&pts);
        prop_assert!((oracle - radius).abs() <= 1e-6, "{} vs {}", radius, oracle);
    }

    #[test]
    fn cheb3_commutes_with_isometries(a in point(), b in point(), c in point(), g in point(), th in 0.0f64..TAU) {
        prop_assume!(h_distance(&a, &b) > 1e-3 && h_distance(&b, &c) > 1e-3 && h_distance(&a, &c) > 1e-3);
        let iso = Isometry::boost_to_origin(&g).compose(&Isometry::rotation(th));
        let (c0, r0) = h_cheb3(&[a, b, c]).unwrap();
        let (c1, r1) = h_cheb3(&[iso.apply(&a), iso.apply(&b), iso.apply(&c)]).unwrap();
        prop_assert!((r0 - r1).abs() <= 1e-8);
        prop_assert!(h_distance(&iso.apply(&c0), &c1) <= 1e-6);
    }
}

#[test]
fn midpoint_is_equidistant_on_random_pairs() {
    let mut rng = trial_rng(17, 0);
    for _ in 0..10_000 {
        let a = HyperbolicPoint::from_polar(rng.random_range(0.0..4.0), rng.random_range(0.0..TAU));
        let b = HyperbolicPoint::from_polar(rng.random_range(0.0..4.0), rng.random_range(0.0..TAU));
        let m = h_midpoint(&a, &b);
        let half = h_distance(&a, &b) / 2.0;
        assert!((h_distance(&a, &m) - half).abs() <= 1e-9);
        assert!((h_distance(&b, &m) - half).abs() <= 1e-9);
    }
}

#[test]
fn midpoint_along_axis() {
    let m = h_midpoint(&HyperbolicPoint::origin(), &HyperbolicPoint::new([2f64.cosh(), 2f64.sinh(), 0.0]).unwrap());
    let expected = HyperbolicPoint::new([1f64.cosh(), 1f64.sinh(), 0.0]).unwrap();
    assert!(h_distance(&m, &expected) < 1e-15);
}

#[test]
fn right_triangle_identities_on_moved_triangles() {
    let mut rng = trial_rng(23, 0);
    for _ in 0..1_000 {
        let t = HyperbolicTriangle::right_from_legs(rng.random_range(0.01..3.0), rng.random_range(0.01..3.0)).unwrap();
        let g = HyperbolicPoint::from_polar(rng.random_range(0.0..2.0), rng.random_range(0.0..TAU));
        let iso = Isometry::boost_to_origin(&g).compose(&Isometry::rotation(rng.random_range(0.0..TAU)));
        let moved = t.map(&iso);
        let r = right_triangle_identity_check(&moved, 0).unwrap();
        assert!(r[0] <= 1e-9 && r[1] <= 1e-9, "{r:?}");
        let sum: f64 = moved.angles().iter().sum();
        assert!(sum < PI);
    }
}

#[test]
fn right_angle_is_measured_exactly_at_origin() {
    let t = HyperbolicTriangle::right_from_legs(0.5, 0.5).unwrap();
    let [o, a, b] = t.vertices();
    assert!((h_angle(o, a, b).unwrap() - FRAC_PI_2).abs() < 1e-15);
}
