mod common;

use common::{jittered_lattice, max_distance, oracle_sweep, rigid, PlainGrid};
use curvigrid::{laplace_residual, smooth, sweep, MetricField, Point2, SolverConfig, StructuredGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn single_node_oracle() {
    let mut g = StructuredGrid::from_fn("c", 2, 2, |i, j| {
        if (i, j) == (1, 1) { Point2::new(0.6, 0.5) } else { Point2::new(i as f64 / 2.0, j as f64 / 2.0) }
    })
    .unwrap();
    let mut plain = PlainGrid::from_grid(&g);
    let expected = oracle_sweep(&mut plain, 0.0, 0.0);

    let change = sweep(&mut g, &SolverConfig::default()).unwrap();
    assert!((change - expected).abs() < 1e-15);
    assert_eq!(g[(1, 1)], Point2::new(plain.x[1][1], plain.y[1][1]));
    // on a uniform square the displaced centre goes straight back
    assert!(g[(1, 1)].distance(Point2::new(0.5, 0.5)) < 1e-15);
    assert!((change - 0.1).abs() < 1e-15);
}

#[test]
fn two_sweeps_match_oracle_on_4x4() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let mut g = jittered_lattice(&mut rng, 3, 3, 0.2);
        let mut plain = PlainGrid::from_grid(&g);
        let cfg = SolverConfig::default();
        for _ in 0..2 {
            let a = sweep(&mut g, &cfg).unwrap();
            let b = oracle_sweep(&mut plain, 0.0, 0.0);
            assert!((a - b).abs() <= 1e-15);
        }
        for i in 0..4 {
            for j in 0..4 {
                assert!((g[(i, j)].x - plain.x[i][j]).abs() <= 1e-15);
                assert!((g[(i, j)].y - plain.y[i][j]).abs() <= 1e-15);
            }
        }
    }
}

#[test]
fn source_terms_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut g = jittered_lattice(&mut rng, 4, 5, 0.15);
    let mut plain = PlainGrid::from_grid(&g);
    let cfg = SolverConfig { source_p: 0.3, source_q: -0.2, ..Default::default() };
    sweep(&mut g, &cfg).unwrap();
    oracle_sweep(&mut plain, 0.3, -0.2);
    let other = StructuredGrid::from_fn("o", 4, 5, |i, j| Point2::new(plain.x[i][j], plain.y[i][j])).unwrap();
    assert!(max_distance(&g, &other) <= 1e-15);
}

#[test]
fn dirichlet_boundary_is_bitwise_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let xi = rng.gen_range(2..9);
        let eta = rng.gen_range(2..9);
        let g = jittered_lattice(&mut rng, xi, eta, 0.25);
        let mut work = g.clone();
        for _ in 0..15 {
            sweep(&mut work, &SolverConfig::default()).unwrap();
            for idx in g.boundary_indices() {
                let (a, b) = (g[(idx.i, idx.j)], work[(idx.i, idx.j)]);
                assert_eq!((a.x.to_bits(), a.y.to_bits()), (b.x.to_bits(), b.y.to_bits()));
            }
        }
    }
}

#[test]
fn affine_grids_are_fixed_points() {
    // dyadic coefficients keep the arithmetic exact
    let g = StructuredGrid::from_fn("a", 6, 5, |i, j| {
        Point2::new(1.5 + 0.75 * i as f64 - 0.25 * j as f64, -2.0 + 0.125 * i as f64 + 0.5 * j as f64)
    })
    .unwrap();
    let mut work = g.clone();
    assert_eq!(sweep(&mut work, &SolverConfig::default()).unwrap(), 0.0);
    assert_eq!(work, g);
}

fn curved_grid() -> StructuredGrid {
    // polar sector with a perturbed interior
    StructuredGrid::from_fn("sector", 8, 6, |i, j| {
        let r = 1.0 + j as f64 / 6.0;
        let t = 0.15 * i as f64;
        let wobble = if i > 0 && i < 8 && j > 0 && j < 6 { 0.05 * ((i * j) as f64).sin() } else { 0.0 };
        Point2::new(r * t.cos() + wobble, r * t.sin() - wobble)
    })
    .unwrap()
}

#[test]
fn rigid_motion_equivariance() {
    let g = curved_grid();
    let cfg = SolverConfig::default();
    let (base, base_report) = smooth(&g, &cfg).unwrap();
    for (theta, tx, ty) in [(0.3, 1.0, -2.0), (2.5, -7.0, 0.5), (-1.1, 0.0, 3.0)] {
        let t = rigid(theta, tx, ty);
        let (moved, report) = smooth(&g.map_points(t).unwrap(), &cfg).unwrap();
        assert_eq!(report.iterations, base_report.iterations);
        assert!(max_distance(&moved, &base.map_points(t).unwrap()) <= 1e-9);
    }
}

#[test]
fn scale_equivariance() {
    let g = curved_grid();
    let (base, base_report) = smooth(&g, &SolverConfig::default()).unwrap();
    for s in [0.25, 3.0, 17.5] {
        // the stopping rule is absolute, so the tolerance scales with the grid
        let cfg = SolverConfig { tolerance: 1e-6 * s, ..Default::default() };
        let (scaled, report) = smooth(&g.map_points(|p| p * s).unwrap(), &cfg).unwrap();
        assert_eq!(report.iterations, base_report.iterations);
        assert!(max_distance(&scaled, &base.map_points(|p| p * s).unwrap()) <= 1e-9 * s);
    }
}

#[test]
fn convergence_tail_is_monotone() {
    let g = curved_grid();
    let (_, report) = smooth(&g, &SolverConfig::default()).unwrap();
    assert!(report.converged);
    let h = &report.change_history;
    assert!(h.len() > 10, "{h:?}");
    for w in h[h.len() - 10..].windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "{w:?}");
    }
}

#[test]
fn converged_residual_is_bounded() {
    let g = curved_grid();
    let cfg = SolverConfig::default();
    let (out, report) = smooth(&g, &cfg).unwrap();
    let scale = MetricField::of(&out).iter().map(|m| m.alpha + m.gamma).fold(0.0, f64::max);
    assert!(report.residual_max <= 10.0 * cfg.tolerance * scale);
    assert_eq!(report.residual_max, laplace_residual(&out, &cfg).unwrap());
}

#[test]
fn perturbed_interior_has_positive_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = jittered_lattice(&mut rng, 5, 5, 0.2);
    assert!(laplace_residual(&g, &SolverConfig::default()).unwrap() > 0.0);
}
