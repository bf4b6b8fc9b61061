//! Structured 2D mesh generation in generalized curvilinear coordinates.
//!
//! A block is described by four border polylines. The generator interpolates
//! each border with a parametric linear spline, resamples it at uniform arc
//! length, seeds the interior by a weighted average of the two opposite-border
//! interpolants, and then relaxes the interior with the elliptic generating
//! equations until grid lines settle. Several blocks can be generated together
//! and plotted as one multiblock mesh.
//!
//! ```
//! use curvigrid::{generate_block, parse_block_file, SolverConfig};
//!
//! let text = "BLOCK sq\nPARTITIONS 4 4\nWEIGHTS_X 0.5 0.5\nWEIGHTS_Y 0.5 0.5\n\
//!             BORDER GAMMA1 2\n0 0\n0 1\nBORDER GAMMA2 2\n0 1\n1 1\n\
//!             BORDER GAMMA3 2\n1 0\n1 1\nBORDER GAMMA4 2\n0 0\n1 0\nEND\n";
//! let block = parse_block_file(text).unwrap();
//! let out = generate_block(&block, &SolverConfig::default()).unwrap();
//! assert!(out.solve.converged);
//! assert_eq!(out.grid.node_dims(), (5, 5));
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blockio;
pub mod elliptic;
pub mod error;
pub mod grid;
pub mod multiblock;
pub mod pipeline;
pub mod quality;
pub mod spline;
pub mod tfi;

pub use blockio::{
    parse_block_file, parse_mesh, render_svg, write_block_file, write_mesh, write_vtk, BlockInput,
};
pub use elliptic::{
    compute_metrics, laplace_residual, smooth, stencil_coefficients, sweep, SolveReport,
    StencilCoefficients,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use grid::{GridIndex, MetricField, NodeMetrics, Point2, SolverConfig, StructuredGrid};
pub use multiblock::{check_interfaces, generate_multiblock, InterfaceMatch, InterfaceReport, MultiblockMesh};
pub use pipeline::{generate_block, GeneratedBlock};
pub use quality::{inverse_metrics, quality_report, QualityReport};
pub use spline::{build_spline, eval_spline, resample, ParametricSpline};
pub use tfi::{init_interior, WeightSet};

/// True iff `idx` lies on the boundary of `grid`.
pub fn is_boundary(idx: GridIndex, grid: &StructuredGrid) -> Result<bool> {
    grid.is_boundary(idx)
}
