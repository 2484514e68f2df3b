use thiserror::Error;

/// Errors raised by quiver construction, parsing and mutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex out of range: {vertex} (quiver has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("not skew-symmetric at ({i},{j})/({j},{i}): {a} vs {b}")]
    NotSkewSymmetric { i: usize, j: usize, a: i64, b: i64 },

    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("arrow multiplicity overflow while mutating at vertex {vertex}")]
    Overflow { vertex: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty quiver: at least one vertex is required")]
    Empty,
}

/// Errors raised by the exhaustive searches (class enumeration, seed
/// enumeration, block decomposition).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget exhausted after {explored} nodes (cap {cap})")]
    BudgetExhausted { explored: usize, cap: usize },

    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

pub type Result<T, E = QuiverError> = std::result::Result<T, E>;

/// Errors raised by catalog lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),

    #[error("{name}: {message}")]
    BadParameters { name: String, message: String },
}

/// Errors raised when gluing blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("no blocks to assemble")]
    NoBlocks,

    #[error("block {block} has no vertex {vertex}")]
    NoSuchVertex { block: usize, vertex: usize },

    #[error("vertices {a} and {b} of block {block} are matched to each other; matched vertices must come from different blocks")]
    SameBlock { block: usize, a: usize, b: usize },

    #[error("vertex {vertex} of block {block} is closed and cannot be matched")]
    ClosedVertexMatched { block: usize, vertex: usize },

    #[error("open vertex {vertex} of block {block} appears in more than one matched pair")]
    VertexReused { block: usize, vertex: usize },
}

/// Errors raised by seed mutation and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    /// A cluster variable failed to divide exactly. This is a bug, never a
    /// property of the input.
    #[error("Laurent phenomenon violation while mutating at vertex {vertex}")]
    LaurentViolation { vertex: usize },

    #[error("cap exceeded: more than {cap} seeds")]
    CapExceeded { cap: usize },

    #[error(transparent)]
    Quiver(#[from] QuiverError),
}
