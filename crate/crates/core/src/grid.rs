//! Shared domain types: physical points, lattice indices, the structured grid
//! and solver settings.
//!
//! A grid with `xi` by `eta` cells has `(xi + 1) * (eta + 1)` nodes. Node
//! `(i, j)` has `i` running along the ξ direction (`0..=xi`) and `j` along η
//! (`0..=eta`). Nodes are stored with `i` varying fastest, which is also the
//! order used by every on-disk format.

use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};

/// A point in the physical (x, y) plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

/// Lattice position `(i, j)` in the computational plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridIndex {
    pub i: usize,
    pub j: usize,
}

impl GridIndex {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl From<(usize, usize)> for GridIndex {
    fn from((i, j): (usize, usize)) -> Self {
        GridIndex::new(i, j)
    }
}

/// A structured lattice of physical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredGrid {
    name: String,
    xi: usize,
    eta: usize,
    coords: Vec<Point2>,
}

impl StructuredGrid {
    /// Builds a grid from nodes listed with `i` varying fastest.
    pub fn from_points(
        name: impl Into<String>,
        xi_partitions: usize,
        eta_partitions: usize,
        coords: Vec<Point2>,
    ) -> Result<Self> {
        if xi_partitions < 1 {
            return Err(Error::InvalidPartitions(xi_partitions));
        }
        if eta_partitions < 1 {
            return Err(Error::InvalidPartitions(eta_partitions));
        }
        let expected = (xi_partitions + 1) * (eta_partitions + 1);
        if coords.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: coords.len() });
        }
        let grid = Self { name: name.into(), xi: xi_partitions, eta: eta_partitions, coords };
        grid.check_finite()?;
        Ok(grid)
    }

    /// Builds a grid by evaluating `f(i, j)` at every node.
    pub fn from_fn(
        name: impl Into<String>,
        xi_partitions: usize,
        eta_partitions: usize,
        mut f: impl FnMut(usize, usize) -> Point2,
    ) -> Result<Self> {
        let mut coords = Vec::with_capacity((xi_partitions + 1) * (eta_partitions + 1));
        for j in 0..=eta_partitions {
            for i in 0..=xi_partitions {
                coords.push(f(i, j));
            }
        }
        Self::from_points(name, xi_partitions, eta_partitions, coords)
    }

    /// The lattice `x = i, y = j`.
    pub fn unit_lattice(name: impl Into<String>, xi: usize, eta: usize) -> Result<Self> {
        Self::from_fn(name, xi, eta, |i, j| Point2::new(i as f64, j as f64))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn xi_partitions(&self) -> usize {
        self.xi
    }

    pub fn eta_partitions(&self) -> usize {
        self.eta
    }

    /// Node counts `(xi + 1, eta + 1)`.
    pub fn node_dims(&self) -> (usize, usize) {
        (self.xi + 1, self.eta + 1)
    }

    pub fn node_count(&self) -> usize {
        self.coords.len()
    }

    /// All nodes, `i` varying fastest.
    pub fn points(&self) -> &[Point2] {
        &self.coords
    }

    #[inline]
    pub(crate) fn offset(&self, i: usize, j: usize) -> usize {
        j * (self.xi + 1) + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Point2 {
        self.coords[self.offset(i, j)]
    }

    pub fn try_get(&self, idx: GridIndex) -> Result<Point2> {
        self.check_index(idx)?;
        Ok(self.get(idx.i, idx.j))
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, p: Point2) {
        let k = self.offset(i, j);
        self.coords[k] = p;
    }

    pub fn check_index(&self, idx: GridIndex) -> Result<()> {
        if idx.i > self.xi || idx.j > self.eta {
            return Err(Error::IndexOutOfBounds { i: idx.i, j: idx.j, xi: self.xi, eta: self.eta });
        }
        Ok(())
    }

    /// True iff `idx` lies on one of the four block edges.
    pub fn is_boundary(&self, idx: GridIndex) -> Result<bool> {
        self.check_index(idx)?;
        Ok(self.is_boundary_unchecked(idx.i, idx.j))
    }

    #[inline]
    pub(crate) fn is_boundary_unchecked(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.xi || j == self.eta
    }

    pub fn has_interior(&self) -> bool {
        self.xi >= 2 && self.eta >= 2
    }

    /// Interior node indices in sweep order (`j` outer, `i` inner).
    pub fn interior_indices(&self) -> impl Iterator<Item = GridIndex> + '_ {
        (1..self.eta).flat_map(move |j| (1..self.xi).map(move |i| GridIndex::new(i, j)))
    }

    /// Boundary node indices, each listed once.
    pub fn boundary_indices(&self) -> impl Iterator<Item = GridIndex> + '_ {
        (0..=self.eta).flat_map(move |j| {
            (0..=self.xi)
                .filter(move |&i| self.is_boundary_unchecked(i, j))
                .map(move |i| GridIndex::new(i, j))
        })
    }

    /// Row `j` (constant η), ordered by increasing `i`.
    pub fn row(&self, j: usize) -> impl Iterator<Item = Point2> + '_ {
        (0..=self.xi).map(move |i| self.get(i, j))
    }

    /// Column `i` (constant ξ), ordered by increasing `j`.
    pub fn column(&self, i: usize) -> impl Iterator<Item = Point2> + '_ {
        (0..=self.eta).map(move |j| self.get(i, j))
    }

    /// Applies `f` to every node, keeping the lattice shape.
    pub fn map_points(&self, mut f: impl FnMut(Point2) -> Point2) -> Result<Self> {
        let coords = self.coords.iter().map(|&p| f(p)).collect();
        Self::from_points(self.name.clone(), self.xi, self.eta, coords)
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        match self.coords.iter().position(|p| !p.is_finite()) {
            Some(k) => {
                Err(Error::NonFinite { i: k % (self.xi + 1), j: k / (self.xi + 1) })
            }
            None => Ok(()),
        }
    }

    /// Axis-aligned bounds as `(min, max)`.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.coords {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }
}

impl Index<(usize, usize)> for StructuredGrid {
    type Output = Point2;

    fn index(&self, (i, j): (usize, usize)) -> &Point2 {
        assert!(i <= self.xi && j <= self.eta, "node ({i}, {j}) out of bounds");
        &self.coords[self.offset(i, j)]
    }
}

/// Transformation metrics at one interior node, from central differences with
/// unit lattice spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeMetrics {
    pub x_xi: f64,
    pub x_eta: f64,
    pub y_xi: f64,
    pub y_eta: f64,
    /// `x_eta² + y_eta²`
    pub alpha: f64,
    /// `x_xi x_eta + y_xi y_eta`
    pub beta: f64,
    /// `x_xi² + y_xi²`
    pub gamma: f64,
    /// `x_xi y_eta - x_eta y_xi`
    pub det: f64,
    /// Jacobian of the transformation, `1 / det`.
    pub jacobian: f64,
}

impl NodeMetrics {
    /// Metrics from the four first derivatives. `jacobian` is infinite when the
    /// determinant vanishes.
    pub fn from_derivatives(x_xi: f64, x_eta: f64, y_xi: f64, y_eta: f64) -> Self {
        let det = x_xi * y_eta - x_eta * y_xi;
        Self {
            x_xi,
            x_eta,
            y_xi,
            y_eta,
            alpha: x_eta * x_eta + y_eta * y_eta,
            beta: x_xi * x_eta + y_xi * y_eta,
            gamma: x_xi * x_xi + y_xi * y_xi,
            det,
            jacobian: 1.0 / det,
        }
    }

    /// Central-difference metrics at `(i, j)` with no singularity check.
    /// Caller guarantees the node is interior.
    #[inline]
    pub(crate) fn at(grid: &StructuredGrid, i: usize, j: usize) -> Self {
        let e = grid.get(i + 1, j);
        let w = grid.get(i - 1, j);
        let n = grid.get(i, j + 1);
        let s = grid.get(i, j - 1);
        Self::from_derivatives((e.x - w.x) / 2.0, (n.x - s.x) / 2.0, (e.y - w.y) / 2.0, (n.y - s.y) / 2.0)
    }
}

/// Metric entries for every interior node of a grid.
#[derive(Debug, Clone)]
pub struct MetricField {
    xi: usize,
    eta: usize,
    entries: Vec<NodeMetrics>,
}

impl MetricField {
    /// Evaluates metrics over the interior without rejecting singular nodes.
    pub fn of(grid: &StructuredGrid) -> Self {
        let entries = grid.interior_indices().map(|idx| NodeMetrics::at(grid, idx.i, idx.j)).collect();
        Self { xi: grid.xi_partitions(), eta: grid.eta_partitions(), entries }
    }

    /// Entry for interior node `(i, j)`, or `None` on the boundary.
    pub fn get(&self, i: usize, j: usize) -> Option<&NodeMetrics> {
        if i == 0 || j == 0 || i >= self.xi || j >= self.eta {
            return None;
        }
        self.entries.get((j - 1) * (self.xi - 1) + (i - 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = &NodeMetrics> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Settings for the elliptic relaxation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once the largest nodal displacement in a sweep is at most this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Relaxation factor ω; 1 is plain Gauss–Seidel.
    pub relaxation: f64,
    /// Source term P (ξ-line control).
    pub source_p: f64,
    /// Source term Q (η-line control).
    pub source_q: f64,
    /// Determinants smaller than this in magnitude are treated as singular.
    pub jacobian_epsilon: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            max_iterations: 10_000,
            relaxation: 1.0,
            source_p: 0.0,
            source_q: 0.0,
            jacobian_epsilon: 1e-12,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.relaxation > 0.0 && self.relaxation < 2.0) {
            return Err(Error::InvalidConfig(format!(
                "relaxation must lie in (0, 2), got {}",
                self.relaxation
            )));
        }
        if !(self.source_p.is_finite() && self.source_q.is_finite()) {
            return Err(Error::InvalidConfig("source terms must be finite".into()));
        }
        if !(self.jacobian_epsilon >= 0.0 && self.jacobian_epsilon.is_finite()) {
            return Err(Error::InvalidConfig("jacobian_epsilon must be non-negative".into()));
        }
        Ok(())
    }
}
