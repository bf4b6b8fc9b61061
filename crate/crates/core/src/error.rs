use std::fmt;

use thiserror::Error;

/// Errors produced while building, smoothing, or inspecting a mesh.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid index ({i}, {j}) outside {xi}x{eta} grid")]
    IndexOutOfBounds { i: usize, j: usize, xi: usize, eta: usize },

    #[error("node ({i}, {j}) is on the boundary; an interior node is required")]
    NotInterior { i: usize, j: usize },

    #[error("degenerate border: fewer than 2 distinct points")]
    DegenerateBorder,

    #[error("spline parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("partition count must be at least 1, got {0}")]
    InvalidPartitions(usize),

    #[error("non-finite coordinate at node ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("grid dimensions do not match: expected {expected} nodes, got {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("singular Jacobian at node ({i}, {j}): determinant {det:e}")]
    SingularJacobian { i: usize, j: usize, det: f64 },

    #[error("degenerate stencil{}: A_P = {a_p:e}", at_node(.node))]
    DegenerateStencil { node: Option<(usize, usize)>, a_p: f64 },

    #[error("solver diverged at node ({i}, {j}) after {iteration} sweeps")]
    Divergence { i: usize, j: usize, iteration: usize },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("weights must lie in [0, 1] and sum to 1 ({0})")]
    InvalidWeights(String),

    #[error("corner disagreement exceeds {tolerance:e}: {corner} differs by {gap:e}")]
    CornerMismatch { corner: &'static str, gap: f64, tolerance: f64 },

    #[error("duplicate block name `{0}`")]
    DuplicateBlockName(String),

    #[error("no input blocks")]
    NoBlocks,

    #[error("interface tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("nothing to render: {0}")]
    EmptyPlot(&'static str),

    #[error("block `{name}`: {source}")]
    Block {
        name: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn at_node(node: &Option<(usize, usize)>) -> String {
    node.map(|(i, j)| format!(" at node ({i}, {j})")).unwrap_or_default()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A malformed block or mesh file, tagged with the 1-based line it was found on.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }

    /// Stable machine-readable identifier for the failure class.
    pub fn code(&self) -> &'static str {
        self.kind.code()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    MissingSection(&'static str),
    DuplicateSection(String),
    UnexpectedKeyword(String),
    WrongFieldCount { expected: usize, found: usize },
    MalformedNumber(String),
    NonFiniteNumber(String),
    WeightRange(f64),
    WeightSum { axis: &'static str, sum: f64 },
    TooFewPoints { border: &'static str, found: usize },
    CornerMismatch { corner: &'static str, gap: f64 },
    UnexpectedEof,
    InvalidPartitions(usize),
    NodeCount { expected: usize, found: usize },
    NodeIndex { expected: (usize, usize), found: (usize, usize) },
    TrailingContent,
}

impl ParseErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            Self::MissingSection(_) => "missing-section",
            Self::DuplicateSection(_) => "duplicate-section",
            Self::UnexpectedKeyword(_) => "unexpected-keyword",
            Self::WrongFieldCount { .. } => "field-count",
            Self::MalformedNumber(_) => "malformed-number",
            Self::NonFiniteNumber(_) => "non-finite-number",
            Self::WeightRange(_) => "weight-range",
            Self::WeightSum { .. } => "weight-sum",
            Self::TooFewPoints { .. } => "too-few-points",
            Self::CornerMismatch { .. } => "corner-mismatch",
            Self::UnexpectedEof => "unexpected-eof",
            Self::InvalidPartitions(_) => "invalid-partitions",
            Self::NodeCount { .. } => "node-count",
            Self::NodeIndex { .. } => "node-index",
            Self::TrailingContent => "trailing-content",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingSection(s) => write!(f, "missing section {s}"),
            Self::DuplicateSection(s) => write!(f, "section {s} given twice"),
            Self::UnexpectedKeyword(s) => write!(f, "unexpected `{s}`"),
            Self::WrongFieldCount { expected, found } => {
                write!(f, "expected {expected} fields, found {found}")
            }
            Self::MalformedNumber(s) => write!(f, "malformed number `{s}`"),
            Self::NonFiniteNumber(s) => write!(f, "non-finite number `{s}`"),
            Self::WeightRange(w) => write!(f, "weight {w} outside [0, 1]"),
            Self::WeightSum { axis, sum } => {
                write!(f, "weights must sum to 1 ({axis} sums to {sum})")
            }
            Self::TooFewPoints { border, found } => {
                write!(f, "border {border} needs at least 2 distinct points, found {found}")
            }
            Self::CornerMismatch { corner, gap } => {
                write!(f, "corner {corner} mismatch of {gap:e} exceeds 1e-6")
            }
            Self::UnexpectedEof => write!(f, "unexpected end of input"),
            Self::InvalidPartitions(n) => write!(f, "partition count must be at least 1, got {n}"),
            Self::NodeCount { expected, found } => {
                write!(f, "expected {expected} nodes, found {found}")
            }
            Self::NodeIndex { expected, found } => write!(
                f,
                "expected node ({}, {}), found ({}, {})",
                expected.0, expected.1, found.0, found.1
            ),
            Self::TrailingContent => write!(f, "content after END"),
        }
    }
}
