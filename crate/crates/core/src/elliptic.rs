//! Elliptic smoothing of a structured grid.
//!
//! Interior nodes relax towards the solution of the generating system
//!
//! ```text
//! α φ_ξξ − 2β φ_ξη + γ φ_ηη + (P φ_ξ + Q φ_η) / J² = 0,   φ ∈ {x, y}
//! ```
//!
//! discretized with central differences on the unit lattice into a nine-point
//! stencil. Boundary nodes are Dirichlet data and are never written.
//!
//! The relaxation is a lexicographic Gauss–Seidel pass (`j` outer, `i` inner)
//! that recomputes the metrics at each node from the current coordinates and
//! updates x and y with the same coefficients.

use crate::error::{Error, Result};
use crate::grid::{GridIndex, NodeMetrics, Point2, SolverConfig, StructuredGrid};

/// Metrics at an interior node, rejecting nodes whose determinant magnitude is
/// below `eps`.
pub fn compute_metrics(grid: &StructuredGrid, idx: GridIndex, eps: f64) -> Result<NodeMetrics> {
    grid.check_index(idx)?;
    if grid.is_boundary_unchecked(idx.i, idx.j) {
        return Err(Error::NotInterior { i: idx.i, j: idx.j });
    }
    let m = NodeMetrics::at(grid, idx.i, idx.j);
    check_det(&m, idx.i, idx.j, eps)?;
    Ok(m)
}

#[inline]
fn check_det(m: &NodeMetrics, i: usize, j: usize, eps: f64) -> Result<()> {
    if m.det.abs() < eps || !m.det.is_finite() {
        return Err(Error::SingularJacobian { i, j, det: m.det });
    }
    Ok(())
}

/// The nine coefficients of the discrete update, labelled by compass
/// direction from the centre node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilCoefficients {
    pub a_p: f64,
    pub a_e: f64,
    pub a_w: f64,
    pub a_n: f64,
    pub a_s: f64,
    pub a_ne: f64,
    pub a_se: f64,
    pub a_nw: f64,
    pub a_sw: f64,
}

impl StencilCoefficients {
    pub fn new(m: &NodeMetrics, p: f64, q: f64) -> Self {
        let two_j2 = 2.0 * m.jacobian * m.jacobian;
        let half_beta = m.beta / 2.0;
        Self {
            a_p: 2.0 * m.alpha + 2.0 * m.gamma,
            a_e: m.alpha + p / two_j2,
            a_w: m.alpha - p / two_j2,
            a_n: m.gamma + q / two_j2,
            a_s: m.gamma - q / two_j2,
            a_ne: -half_beta,
            a_se: half_beta,
            a_nw: half_beta,
            a_sw: -half_beta,
        }
    }

    /// Neighbour-weighted sum `Σ a_nb φ_nb` in the order E, W, N, S, NE, SE,
    /// NW, SW.
    #[inline]
    fn neighbour_sum(&self, n: &Neighbourhood, component: impl Fn(Point2) -> f64) -> f64 {
        self.a_e * component(n.e)
            + self.a_w * component(n.w)
            + self.a_n * component(n.n)
            + self.a_s * component(n.s)
            + self.a_ne * component(n.ne)
            + self.a_se * component(n.se)
            + self.a_nw * component(n.nw)
            + self.a_sw * component(n.sw)
    }
}

/// Coefficients for metrics `m` with source terms `p`, `q`; fails when the
/// centre coefficient is not above `eps`.
pub fn stencil_coefficients(m: &NodeMetrics, p: f64, q: f64, eps: f64) -> Result<StencilCoefficients> {
    let c = StencilCoefficients::new(m, p, q);
    if !(c.a_p > eps) {
        return Err(Error::DegenerateStencil { node: None, a_p: c.a_p });
    }
    Ok(c)
}

struct Neighbourhood {
    e: Point2,
    w: Point2,
    n: Point2,
    s: Point2,
    ne: Point2,
    se: Point2,
    nw: Point2,
    sw: Point2,
}

impl Neighbourhood {
    #[inline]
    fn of(grid: &StructuredGrid, i: usize, j: usize) -> Self {
        Self {
            e: grid.get(i + 1, j),
            w: grid.get(i - 1, j),
            n: grid.get(i, j + 1),
            s: grid.get(i, j - 1),
            ne: grid.get(i + 1, j + 1),
            se: grid.get(i + 1, j - 1),
            nw: grid.get(i - 1, j + 1),
            sw: grid.get(i - 1, j - 1),
        }
    }
}

/// Coefficients at interior node `(i, j)` of the current grid.
fn node_stencil(grid: &StructuredGrid, i: usize, j: usize, cfg: &SolverConfig) -> Result<StencilCoefficients> {
    let m = NodeMetrics::at(grid, i, j);
    check_det(&m, i, j, cfg.jacobian_epsilon)?;
    stencil_coefficients(&m, cfg.source_p, cfg.source_q, cfg.jacobian_epsilon).map_err(|e| match e {
        Error::DegenerateStencil { a_p, .. } => Error::DegenerateStencil { node: Some((i, j)), a_p },
        other => other,
    })
}

/// One Gauss–Seidel pass over the interior, in place. Returns the largest
/// Euclidean displacement of any node.
pub fn sweep(grid: &mut StructuredGrid, cfg: &SolverConfig) -> Result<f64> {
    sweep_counted(grid, cfg, 1)
}

fn sweep_counted(grid: &mut StructuredGrid, cfg: &SolverConfig, iteration: usize) -> Result<f64> {
    let omega = cfg.relaxation;
    let mut max_change: f64 = 0.0;
    for j in 1..grid.eta_partitions() {
        for i in 1..grid.xi_partitions() {
            let c = node_stencil(grid, i, j, cfg)?;
            let nb = Neighbourhood::of(grid, i, j);
            let gs = Point2::new(c.neighbour_sum(&nb, |p| p.x) / c.a_p, c.neighbour_sum(&nb, |p| p.y) / c.a_p);

            let old = grid.get(i, j);
            let new = if omega == 1.0 {
                gs
            } else {
                Point2::new(old.x + omega * (gs.x - old.x), old.y + omega * (gs.y - old.y))
            };
            if !new.is_finite() {
                return Err(Error::Divergence { i, j, iteration });
            }
            max_change = max_change.max(new.distance(old));
            grid.set(i, j, new);
        }
    }
    Ok(max_change)
}

/// Outcome of [`smooth`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// Sweeps performed.
    pub iterations: usize,
    pub final_max_change: f64,
    pub converged: bool,
    /// Largest absolute discrete residual over the interior, for x and y.
    pub residual_max: f64,
    /// Max displacement of every sweep, in order.
    pub change_history: Vec<f64>,
}

/// Sweeps until the max displacement drops to `cfg.tolerance` or the
/// iteration budget runs out. Running out is reported, not raised.
pub fn smooth(grid: &StructuredGrid, cfg: &SolverConfig) -> Result<(StructuredGrid, SolveReport)> {
    cfg.validate()?;
    grid.check_finite()?;

    let mut work = grid.clone();
    let mut history = Vec::new();
    let mut converged = false;
    for iteration in 1..=cfg.max_iterations {
        let change = sweep_counted(&mut work, cfg, iteration)?;
        history.push(change);
        if change <= cfg.tolerance {
            converged = true;
            break;
        }
    }

    let residual_max = laplace_residual(&work, cfg)?;
    let report = SolveReport {
        iterations: history.len(),
        final_max_change: history.last().copied().unwrap_or(0.0),
        converged,
        residual_max,
        change_history: history,
    };
    Ok((work, report))
}

/// Largest absolute value of `−A_P φ_P + Σ a_nb φ_nb` over interior nodes and
/// both coordinates.
pub fn laplace_residual(grid: &StructuredGrid, cfg: &SolverConfig) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for idx in grid.interior_indices() {
        let (i, j) = (idx.i, idx.j);
        let m = NodeMetrics::at(grid, i, j);
        check_det(&m, i, j, cfg.jacobian_epsilon)?;
        let c = StencilCoefficients::new(&m, cfg.source_p, cfg.source_q);
        let nb = Neighbourhood::of(grid, i, j);
        let p = grid.get(i, j);
        let rx = -c.a_p * p.x + c.neighbour_sum(&nb, |q| q.x);
        let ry = -c.a_p * p.y + c.neighbour_sum(&nb, |q| q.y);
        worst = worst.max(rx.abs()).max(ry.abs());
    }
    Ok(worst)
}
