//! Monoblock generation: border splines, resampling, boundary assembly,
//! weighted-average initialization, elliptic smoothing and a quality check.

use crate::blockio::{BlockInput, CORNER_TOLERANCE};
use crate::elliptic::{smooth, SolveReport};
use crate::error::{Error, Result};
use crate::grid::{Point2, SolverConfig, StructuredGrid};
use crate::quality::{quality_report, QualityReport};
use crate::spline::ParametricSpline;
use crate::tfi::init_interior;

/// A generated block with its solver and quality diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedBlock {
    pub grid: StructuredGrid,
    pub solve: SolveReport,
    pub quality: QualityReport,
}

/// The four resampled borders of a block, in lattice order.
#[derive(Debug, Clone)]
pub struct ResampledBorders {
    /// Column `i = 0`, `eta + 1` points.
    pub left: Vec<Point2>,
    /// Row `j = eta`, `xi + 1` points.
    pub top: Vec<Point2>,
    /// Column `i = xi`, `eta + 1` points.
    pub right: Vec<Point2>,
    /// Row `j = 0`, `xi + 1` points.
    pub bottom: Vec<Point2>,
}

pub fn resample_borders(input: &BlockInput) -> Result<ResampledBorders> {
    input.validate()?;
    let sample = |pts: &[Point2], n: usize| ParametricSpline::new(pts)?.resample(n);
    Ok(ResampledBorders {
        left: sample(&input.gamma1, input.eta_partitions)?,
        top: sample(&input.gamma2, input.xi_partitions)?,
        right: sample(&input.gamma3, input.eta_partitions)?,
        bottom: sample(&input.gamma4, input.xi_partitions)?,
    })
}

fn reconcile(corner: &'static str, a: Point2, b: Point2) -> Result<Point2> {
    let gap = a.distance(b);
    if !(gap <= CORNER_TOLERANCE) {
        return Err(Error::CornerMismatch { corner, gap, tolerance: CORNER_TOLERANCE });
    }
    Ok(a.midpoint(b))
}

/// Grid with the resampled borders on its boundary and a zero interior.
/// Each corner is the midpoint of the two border samples meeting there.
pub fn assemble_boundary(name: &str, b: &ResampledBorders) -> Result<StructuredGrid> {
    let xi = b.bottom.len() - 1;
    let eta = b.left.len() - 1;
    let corners = [
        reconcile("GAMMA1/GAMMA4", b.bottom[0], b.left[0])?,
        reconcile("GAMMA3/GAMMA4", b.bottom[xi], b.right[0])?,
        reconcile("GAMMA1/GAMMA2", b.top[0], b.left[eta])?,
        reconcile("GAMMA2/GAMMA3", b.top[xi], b.right[eta])?,
    ];
    StructuredGrid::from_fn(name, xi, eta, |i, j| match (i, j) {
        (0, 0) => corners[0],
        (i, 0) if i == xi => corners[1],
        (0, j) if j == eta => corners[2],
        (i, j) if i == xi && j == eta => corners[3],
        (i, 0) => b.bottom[i],
        (i, j) if j == eta => b.top[i],
        (0, j) => b.left[j],
        (i, j) if i == xi => b.right[j],
        _ => Point2::default(),
    })
}

/// Runs the full monoblock generator on one block.
pub fn generate_block(input: &BlockInput, cfg: &SolverConfig) -> Result<GeneratedBlock> {
    cfg.validate()?;
    let borders = resample_borders(input)?;
    let boundary = assemble_boundary(&input.name, &borders)?;
    let initial = init_interior(&boundary, &input.weights)?;
    let (grid, solve) = smooth(&initial, cfg)?;
    let quality = quality_report(&grid);
    Ok(GeneratedBlock { grid, solve, quality })
}
