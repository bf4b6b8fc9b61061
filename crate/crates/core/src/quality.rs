//! Mesh diagnostics.
//!
//! The report works with the metric determinant `x_ξ y_η − x_η y_ξ` rather
//! than the Jacobian `1 / det`, since the determinant stays finite where the
//! mesh degenerates.

use std::fmt;

use crate::grid::{MetricField, NodeMetrics, StructuredGrid};

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    /// Smallest interior determinant; `+inf` when the grid has no interior.
    pub min_jacobian_det: f64,
    /// Largest interior determinant; `-inf` when the grid has no interior.
    pub max_jacobian_det: f64,
    /// Interior nodes with a non-positive determinant.
    pub folded_node_count: usize,
    /// Mean of `|β| / √(αγ)`, the cosine of the angle between grid lines,
    /// over nodes where it is defined.
    pub mean_beta_over_alpha_gamma: f64,
    /// Interior nodes examined.
    pub node_count: usize,
}

impl QualityReport {
    pub fn is_folded(&self) -> bool {
        self.folded_node_count > 0
    }
}

/// One `key: value` per line.
impl fmt::Display for QualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "node_count: {}", self.node_count)?;
        writeln!(f, "min_jacobian_det: {}", self.min_jacobian_det)?;
        writeln!(f, "max_jacobian_det: {}", self.max_jacobian_det)?;
        writeln!(f, "folded_node_count: {}", self.folded_node_count)?;
        writeln!(f, "mean_beta_over_alpha_gamma: {}", self.mean_beta_over_alpha_gamma)
    }
}

pub fn quality_report(grid: &StructuredGrid) -> QualityReport {
    let field = MetricField::of(grid);
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut folded = 0;
    let mut skew_sum = 0.0;
    let mut skew_count = 0usize;
    for m in field.iter() {
        // NaN determinants count as folded and leave min/max alone
        min = min.min(m.det);
        max = max.max(m.det);
        if !(m.det > 0.0) {
            folded += 1;
        }
        let skew = m.beta.abs() / (m.alpha * m.gamma).sqrt();
        if skew.is_finite() {
            skew_sum += skew;
            skew_count += 1;
        }
    }
    QualityReport {
        min_jacobian_det: min,
        max_jacobian_det: max,
        folded_node_count: folded,
        mean_beta_over_alpha_gamma: if skew_count > 0 { skew_sum / skew_count as f64 } else { 0.0 },
        node_count: field.len(),
    }
}

/// Inverse metrics `(ξ_x, ξ_y, η_x, η_y)`.
pub fn inverse_metrics(m: &NodeMetrics) -> (f64, f64, f64, f64) {
    let j = m.jacobian;
    (j * m.y_eta, -j * m.x_eta, -j * m.y_xi, j * m.x_xi)
}
