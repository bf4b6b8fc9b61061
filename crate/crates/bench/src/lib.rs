//! Fixtures for the criterion benchmarks.

use std::path::PathBuf;

use curvigrid::{parse_block_file, BlockInput};

/// Loads a block from the workspace `data/` directory.
pub fn dataset(name: &str) -> BlockInput {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(format!("{name}.block"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_block_file(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
