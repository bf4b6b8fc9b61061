mod common;

use common::{polyline_distance, rigid};
use curvigrid::{ParametricSpline, Point2};
use proptest::prelude::*;

fn polyline() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 2..10).prop_filter_map("distinct points", |raw| {
        let pts: Vec<Point2> = raw.into_iter().map(Point2::from).collect();
        pts.windows(2).all(|w| w[0].distance(w[1]) > 1e-3).then_some(pts)
    })
}

proptest! {
    #[test]
    fn knots_interpolate_control_points(pts in polyline()) {
        let s = ParametricSpline::new(&pts).unwrap();
        prop_assert_eq!(s.knots().len(), pts.len());
        prop_assert_eq!(s.knots()[0], 0.0);
        prop_assert_eq!(*s.knots().last().unwrap(), 1.0);
        for (t, p) in s.knots().iter().zip(&pts) {
            prop_assert_eq!(s.eval(*t).unwrap(), *p);
        }
    }

    #[test]
    fn evaluations_lie_on_the_polyline(pts in polyline(), t in 0.0..=1.0f64) {
        let s = ParametricSpline::new(&pts).unwrap();
        prop_assert!(polyline_distance(s.eval(t).unwrap(), &pts) <= 1e-12);
    }

    #[test]
    fn resampling_is_uniform_in_arc_length(pts in polyline(), n in 1usize..40) {
        let s = ParametricSpline::new(&pts).unwrap();
        let q = s.resample(n).unwrap();
        prop_assert_eq!(q.len(), n + 1);
        prop_assert_eq!(q[0], pts[0]);
        prop_assert_eq!(q[n], *pts.last().unwrap());
        // chords never exceed the arc step, and sum to no more than the length
        let step = s.length() / n as f64;
        for w in q.windows(2) {
            prop_assert!(w[0].distance(w[1]) <= step * (1.0 + 1e-9));
        }
    }

    #[test]
    fn rigid_motion_commutes_with_evaluation(
        pts in polyline(), t in 0.0..=1.0f64, theta in -3.2..3.2f64, tx in -10.0..10.0f64, ty in -10.0..10.0f64,
    ) {
        let m = rigid(theta, tx, ty);
        let moved: Vec<Point2> = pts.iter().map(|&p| m(p)).collect();
        let a = ParametricSpline::new(&pts).unwrap().eval(t).unwrap();
        let b = ParametricSpline::new(&moved).unwrap().eval(t).unwrap();
        prop_assert!(m(a).distance(b) <= 1e-9);
    }
}

#[test]
fn out_of_range_parameter_is_rejected() {
    let s = ParametricSpline::new(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)]).unwrap();
    assert!(s.eval(-0.01).is_err());
    assert!(s.eval(1.01).is_err());
    assert_eq!(s.eval(1.0 + 1e-13).unwrap(), Point2::new(1.0, 0.0));
}
