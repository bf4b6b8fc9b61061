//! Parametric linear splines over border point lists.
//!
//! Knots are the cumulative chord lengths of the control polygon normalized to
//! `[0, 1]`, so the spline parameter is also the fraction of arc length
//! travelled along the border.

use crate::error::{Error, Result};
use crate::grid::Point2;

/// Slack allowed on the parameter before it is rejected rather than clamped.
const PARAM_SLACK: f64 = 1e-12;

/// Piecewise-linear curve through a list of control points.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricSpline {
    points: Vec<Point2>,
    knots: Vec<f64>,
    length: f64,
}

impl ParametricSpline {
    /// Builds the spline, collapsing consecutive duplicate points.
    pub fn new(border_points: &[Point2]) -> Result<Self> {
        let mut points: Vec<Point2> = Vec::with_capacity(border_points.len());
        for &p in border_points {
            if !p.is_finite() {
                return Err(Error::NonFinite { i: points.len(), j: 0 });
            }
            if points.last() != Some(&p) {
                points.push(p);
            }
        }
        if points.len() < 2 {
            return Err(Error::DegenerateBorder);
        }

        let mut cumulative = Vec::with_capacity(points.len());
        let mut total = 0.0;
        cumulative.push(0.0);
        for w in points.windows(2) {
            total += w[0].distance(w[1]);
            cumulative.push(total);
        }

        // Chords too short to register after normalization would give a
        // non-increasing knot; drop those points as duplicates too.
        let mut kept_points = Vec::with_capacity(points.len());
        let mut knots = Vec::with_capacity(points.len());
        let last = points.len() - 1;
        for (k, (&p, &s)) in points.iter().zip(&cumulative).enumerate() {
            let t = if k == last { 1.0 } else { s / total };
            match knots.last() {
                Some(&prev) if t <= prev => {
                    if k == last {
                        // keep the true endpoint; it replaces the near-duplicate
                        kept_points.pop();
                        knots.pop();
                    } else {
                        continue;
                    }
                }
                _ => {}
            }
            kept_points.push(p);
            knots.push(t);
        }
        if kept_points.len() < 2 {
            return Err(Error::DegenerateBorder);
        }
        knots[0] = 0.0;

        Ok(Self { points: kept_points, knots, length: total })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Total length of the control polygon.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn start(&self) -> Point2 {
        self.points[0]
    }

    pub fn end(&self) -> Point2 {
        self.points[self.points.len() - 1]
    }

    /// Evaluates the spline at `t ∈ [0, 1]`.
    pub fn eval(&self, t: f64) -> Result<Point2> {
        if !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&t) {
            return Err(Error::ParameterOutOfRange(t));
        }
        let t = t.clamp(0.0, 1.0);

        // first knot >= t
        let k = self.knots.partition_point(|&u| u < t);
        if self.knots[k] == t {
            return Ok(self.points[k]);
        }
        let (t0, t1) = (self.knots[k - 1], self.knots[k]);
        let (p0, p1) = (self.points[k - 1], self.points[k]);
        let span = t1 - t0;
        let a = (t1 - t) / span;
        let b = (t - t0) / span;
        Ok(Point2::new(p0.x * a + p1.x * b, p0.y * a + p1.y * b))
    }

    /// `n + 1` points at uniform arc-length spacing, endpoints included exactly.
    pub fn resample(&self, n: usize) -> Result<Vec<Point2>> {
        if n < 1 {
            return Err(Error::InvalidPartitions(n));
        }
        (0..=n)
            .map(|k| {
                if k == n {
                    Ok(self.end())
                } else {
                    self.eval(k as f64 / n as f64)
                }
            })
            .collect()
    }
}

/// Builds a spline through `border_points`.
pub fn build_spline(border_points: &[Point2]) -> Result<ParametricSpline> {
    ParametricSpline::new(border_points)
}

pub fn eval_spline(spline: &ParametricSpline, t: f64) -> Result<Point2> {
    spline.eval(t)
}

pub fn resample(spline: &ParametricSpline, n: usize) -> Result<Vec<Point2>> {
    spline.resample(n)
}
