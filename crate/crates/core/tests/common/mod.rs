//! Helpers shared by the integration tests: dataset loading and an
//! independent brute-force implementation of the smoothing sweep.

#![allow(dead_code)]

use std::path::PathBuf;

use curvigrid::{parse_block_file, BlockInput, Point2, StructuredGrid};
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn load_block(file: &str) -> BlockInput {
    let path = data_dir().join(file);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_block_file(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Node positions as nested vectors, `x[i][j]`.
pub struct PlainGrid {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

impl PlainGrid {
    pub fn from_grid(g: &StructuredGrid) -> Self {
        let (nx, ny) = g.node_dims();
        let mut x = vec![vec![0.0; ny]; nx];
        let mut y = vec![vec![0.0; ny]; nx];
        for (i, (xc, yc)) in x.iter_mut().zip(y.iter_mut()).enumerate() {
            for j in 0..ny {
                let p = g[(i, j)];
                xc[j] = p.x;
                yc[j] = p.y;
            }
        }
        Self { x, y }
    }
}

/// One lexicographic Gauss–Seidel pass written straight from the discrete
/// equations, with P = Q = 0 unless given. Returns the max displacement.
pub fn oracle_sweep(g: &mut PlainGrid, p_src: f64, q_src: f64) -> f64 {
    let nx = g.x.len();
    let ny = g.x[0].len();
    let mut max_change = 0.0f64;
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let x_xi = (g.x[i + 1][j] - g.x[i - 1][j]) / 2.0;
            let y_xi = (g.y[i + 1][j] - g.y[i - 1][j]) / 2.0;
            let x_eta = (g.x[i][j + 1] - g.x[i][j - 1]) / 2.0;
            let y_eta = (g.y[i][j + 1] - g.y[i][j - 1]) / 2.0;

            let alpha = x_eta * x_eta + y_eta * y_eta;
            let beta = x_xi * x_eta + y_xi * y_eta;
            let gamma = x_xi * x_xi + y_xi * y_xi;
            let jac = 1.0 / (x_xi * y_eta - x_eta * y_xi);

            let a_p = 2.0 * alpha + 2.0 * gamma;
            let a_e = alpha + p_src / (2.0 * jac * jac);
            let a_w = alpha - p_src / (2.0 * jac * jac);
            let a_n = gamma + q_src / (2.0 * jac * jac);
            let a_s = gamma - q_src / (2.0 * jac * jac);
            let a_ne = -beta / 2.0;
            let a_se = beta / 2.0;
            let a_nw = beta / 2.0;
            let a_sw = -beta / 2.0;

            let update = |f: &Vec<Vec<f64>>| {
                (a_e * f[i + 1][j]
                    + a_w * f[i - 1][j]
                    + a_n * f[i][j + 1]
                    + a_s * f[i][j - 1]
                    + a_ne * f[i + 1][j + 1]
                    + a_se * f[i + 1][j - 1]
                    + a_nw * f[i - 1][j + 1]
                    + a_sw * f[i - 1][j - 1])
                    / a_p
            };
            let nxv = update(&g.x);
            let nyv = update(&g.y);
            let d = ((nxv - g.x[i][j]).powi(2) + (nyv - g.y[i][j]).powi(2)).sqrt();
            max_change = max_change.max(d);
            g.x[i][j] = nxv;
            g.y[i][j] = nyv;
        }
    }
    max_change
}

/// A unit-spaced lattice with every node jittered by up to `amp` in each
/// coordinate (boundary included).
pub fn jittered_lattice(rng: &mut impl Rng, xi: usize, eta: usize, amp: f64) -> StructuredGrid {
    StructuredGrid::from_fn("jitter", xi, eta, |i, j| {
        Point2::new(i as f64 + rng.gen_range(-amp..amp), j as f64 + rng.gen_range(-amp..amp))
    })
    .unwrap()
}

/// Rotation by `theta` followed by translation by `(tx, ty)`.
pub fn rigid(theta: f64, tx: f64, ty: f64) -> impl Fn(Point2) -> Point2 + Copy {
    let (s, c) = theta.sin_cos();
    move |p: Point2| Point2::new(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty)
}

pub fn max_distance(a: &StructuredGrid, b: &StructuredGrid) -> f64 {
    assert_eq!(a.node_dims(), b.node_dims());
    a.points().iter().zip(b.points()).map(|(p, q)| p.distance(*q)).fold(0.0, f64::max)
}

/// Distance from `p` to segment `ab`.
pub fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    let t = if len2 == 0.0 { 0.0 } else { (((p - a).x * ab.x + (p - a).y * ab.y) / len2).clamp(0.0, 1.0) };
    p.distance(a + ab * t)
}

pub fn polyline_distance(p: Point2, pts: &[Point2]) -> f64 {
    pts.windows(2).map(|w| segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
}
