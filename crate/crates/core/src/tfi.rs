//! Algebraic interior initialization by weighted averaging of the two
//! opposite-border linear interpolants.

use crate::error::{Error, Result};
use crate::grid::{Point2, StructuredGrid};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Blending weights. `p13_*` weight the left/right (Γ1/Γ3) interpolant and
/// `p24_*` the top/bottom (Γ2/Γ4) one, separately for x and y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSet {
    pub p13_x: f64,
    pub p24_x: f64,
    pub p13_y: f64,
    pub p24_y: f64,
}

impl WeightSet {
    pub fn new(p13_x: f64, p24_x: f64, p13_y: f64, p24_y: f64) -> Result<Self> {
        let w = Self { p13_x, p24_x, p13_y, p24_y };
        w.validate()?;
        Ok(w)
    }

    /// Weights given only for the left/right borders; the top/bottom ones are
    /// the complements.
    pub fn from_left_right(p13_x: f64, p13_y: f64) -> Result<Self> {
        Self::new(p13_x, 1.0 - p13_x, p13_y, 1.0 - p13_y)
    }

    /// All four weights 0.5.
    pub fn uniform() -> Self {
        Self { p13_x: 0.5, p24_x: 0.5, p13_y: 0.5, p24_y: 0.5 }
    }

    pub fn validate(&self) -> Result<()> {
        for w in [self.p13_x, self.p24_x, self.p13_y, self.p24_y] {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
            }
        }
        for (axis, a, b) in [("x", self.p13_x, self.p24_x), ("y", self.p13_y, self.p24_y)] {
            if ((a + b) - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                return Err(Error::InvalidWeights(format!("{axis} weights sum to {}", a + b)));
            }
        }
        Ok(())
    }
}

/// Fills the interior of `boundary` from its four edges. Boundary nodes are
/// copied through untouched; interior values of the input are ignored.
pub fn init_interior(boundary: &StructuredGrid, w: &WeightSet) -> Result<StructuredGrid> {
    w.validate()?;
    for idx in boundary.boundary_indices() {
        if !boundary.get(idx.i, idx.j).is_finite() {
            return Err(Error::NonFinite { i: idx.i, j: idx.j });
        }
    }
    let mut grid = boundary.clone();
    let xi = grid.xi_partitions();
    let eta = grid.eta_partitions();
    if !grid.has_interior() {
        return Ok(grid);
    }

    for j in 1..eta {
        let left = boundary.get(0, j);
        let right = boundary.get(xi, j);
        let step_xi = Point2::new((right.x - left.x) / xi as f64, (right.y - left.y) / xi as f64);
        for i in 1..xi {
            let bottom = boundary.get(i, 0);
            let top = boundary.get(i, eta);
            let step_eta = Point2::new((top.x - bottom.x) / eta as f64, (top.y - bottom.y) / eta as f64);

            let (fi, fj) = (i as f64, j as f64);
            let x = w.p13_x * (left.x + fi * step_xi.x) + w.p24_x * (bottom.x + fj * step_eta.x);
            let y = w.p13_y * (left.y + fi * step_xi.y) + w.p24_y * (bottom.y + fj * step_eta.y);
            grid.set(i, j, Point2::new(x, y));
        }
    }
    Ok(grid)
}
