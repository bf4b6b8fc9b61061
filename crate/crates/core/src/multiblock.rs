//! Multiblock meshes: independent monoblocks generated side by side, plus an
//! audit of where their boundaries touch.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::blockio::BlockInput;
use crate::elliptic::SolveReport;
use crate::error::{Error, Result};
use crate::grid::{Point2, SolverConfig, StructuredGrid};
use crate::pipeline::{generate_block, GeneratedBlock};
use crate::quality::QualityReport;

#[derive(Debug, Clone, PartialEq)]
pub struct MultiblockMesh {
    pub blocks: Vec<StructuredGrid>,
    pub reports: Vec<(SolveReport, QualityReport)>,
}

impl MultiblockMesh {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn all_converged(&self) -> bool {
        self.reports.iter().all(|(s, _)| s.converged)
    }

    pub fn any_folded(&self) -> bool {
        self.reports.iter().any(|(_, q)| q.is_folded())
    }
}

/// Generates every block. Blocks run in parallel; output order follows
/// `inputs`, and when several blocks fail the first one in input order is
/// reported.
pub fn generate_multiblock(inputs: &[BlockInput], cfg: &SolverConfig) -> Result<MultiblockMesh> {
    if inputs.is_empty() {
        return Err(Error::NoBlocks);
    }
    let mut seen = HashSet::new();
    for b in inputs {
        if !seen.insert(b.name.as_str()) {
            return Err(Error::DuplicateBlockName(b.name.clone()));
        }
    }

    let results: Vec<Result<GeneratedBlock>> = inputs.par_iter().map(|b| generate_block(b, cfg)).collect();

    let mut mesh = MultiblockMesh { blocks: Vec::with_capacity(inputs.len()), reports: Vec::new() };
    for (input, result) in inputs.iter().zip(results) {
        let out = result.map_err(|e| Error::Block { name: input.name.clone(), source: Box::new(e) })?;
        mesh.blocks.push(out.grid);
        mesh.reports.push((out.solve, out.quality));
    }
    Ok(mesh)
}

/// Boundary contact between two blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceMatch {
    pub first: String,
    pub second: String,
    /// Boundary-node pairs, one from each block, closer than the tolerance.
    pub matched_node_count: usize,
    /// Largest distance among matched pairs; 0 when nothing matched.
    pub max_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct InterfaceReport {
    /// One entry per unordered block pair, in `(a, b)` order with `a < b`.
    pub pairs: Vec<InterfaceMatch>,
}

impl InterfaceReport {
    pub fn total_matched(&self) -> usize {
        self.pairs.iter().map(|p| p.matched_node_count).sum()
    }

    pub fn max_gap(&self) -> f64 {
        self.pairs.iter().map(|p| p.max_gap).fold(0.0, f64::max)
    }

    pub fn pair(&self, a: &str, b: &str) -> Option<&InterfaceMatch> {
        self.pairs
            .iter()
            .find(|p| (p.first == a && p.second == b) || (p.first == b && p.second == a))
    }
}

impl fmt::Display for InterfaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            writeln!(
                f,
                "interface {} {}: matched_node_count: {} max_gap: {}",
                p.first, p.second, p.matched_node_count, p.max_gap
            )?;
        }
        Ok(())
    }
}

fn boundary_points(g: &StructuredGrid) -> Vec<Point2> {
    g.boundary_indices().map(|idx| g.get(idx.i, idx.j)).collect()
}

/// Counts boundary-node pairs within `tol` for every pair of blocks, by
/// brute force.
pub fn check_interfaces(mesh: &MultiblockMesh, tol: f64) -> Result<InterfaceReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let boundaries: Vec<Vec<Point2>> = mesh.blocks.iter().map(boundary_points).collect();
    let mut report = InterfaceReport::default();
    for a in 0..mesh.blocks.len() {
        for b in a + 1..mesh.blocks.len() {
            let mut matched = 0;
            let mut max_gap: f64 = 0.0;
            for p in &boundaries[a] {
                for q in &boundaries[b] {
                    let d = p.distance(*q);
                    if d <= tol {
                        matched += 1;
                        max_gap = max_gap.max(d);
                    }
                }
            }
            report.pairs.push(InterfaceMatch {
                first: mesh.blocks[a].name().to_string(),
                second: mesh.blocks[b].name().to_string(),
                matched_node_count: matched,
                max_gap,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfi::WeightSet;

    fn rect(name: &str, x0: f64, x1: f64, n: usize) -> BlockInput {
        let p = Point2::new;
        BlockInput {
            name: name.into(),
            xi_partitions: n,
            eta_partitions: n,
            weights: WeightSet::uniform(),
            gamma1: vec![p(x0, 0.0), p(x0, 1.0)],
            gamma2: vec![p(x0, 1.0), p(x1, 1.0)],
            gamma3: vec![p(x1, 0.0), p(x1, 1.0)],
            gamma4: vec![p(x0, 0.0), p(x1, 0.0)],
        }
    }

    #[test]
    fn single_block_matches_monoblock() {
        let cfg = SolverConfig::default();
        let b = rect("a", 0.0, 1.0, 3);
        let mesh = generate_multiblock(std::slice::from_ref(&b), &cfg).unwrap();
        let mono = generate_block(&b, &cfg).unwrap();
        assert_eq!(mesh.blocks, vec![mono.grid]);
        assert_eq!(mesh.reports[0], (mono.solve, mono.quality));
    }

    #[test]
    fn shared_edge_matches() {
        let cfg = SolverConfig::default();
        let mesh = generate_multiblock(&[rect("a", 0.0, 1.0, 4), rect("b", 1.0, 2.0, 4)], &cfg).unwrap();
        let r = check_interfaces(&mesh, 1e-9).unwrap();
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].matched_node_count, 5);
        assert_eq!(r.pairs[0].max_gap, 0.0);
    }

    #[test]
    fn different_refinements_match_coincident_subset() {
        let cfg = SolverConfig::default();
        // edge x = 1 sampled at j/4 and j/6: common at 0, 1/2, 1
        let mesh = generate_multiblock(&[rect("a", 0.0, 1.0, 4), rect("b", 1.0, 2.0, 6)], &cfg).unwrap();
        let r = check_interfaces(&mesh, 1e-9).unwrap();
        assert_eq!(r.pairs[0].matched_node_count, 3);
        assert!(r.max_gap() <= 1e-9);
    }

    #[test]
    fn far_blocks_do_not_match() {
        let cfg = SolverConfig::default();
        let mesh = generate_multiblock(&[rect("a", 0.0, 1.0, 2), rect("b", 5.0, 6.0, 2)], &cfg).unwrap();
        assert_eq!(check_interfaces(&mesh, 1e-6).unwrap().total_matched(), 0);
    }

    #[test]
    fn errors() {
        let cfg = SolverConfig::default();
        assert_eq!(generate_multiblock(&[], &cfg), Err(Error::NoBlocks));
        let dup = [rect("a", 0.0, 1.0, 2), rect("a", 1.0, 2.0, 2)];
        assert_eq!(generate_multiblock(&dup, &cfg), Err(Error::DuplicateBlockName("a".into())));

        let mut bad = rect("bad", 1.0, 2.0, 2);
        bad.gamma2[0].y = 3.0;
        let err = generate_multiblock(&[rect("ok", 0.0, 1.0, 2), bad], &cfg).unwrap_err();
        assert!(matches!(&err, Error::Block { name, .. } if name == "bad"), "{err}");

        let mesh = generate_multiblock(&[rect("a", 0.0, 1.0, 2)], &cfg).unwrap();
        assert_eq!(check_interfaces(&mesh, 0.0), Err(Error::InvalidTolerance(0.0)));
        assert!(check_interfaces(&mesh, 1e-6).unwrap().pairs.is_empty());
    }
}
