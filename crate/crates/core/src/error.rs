use thiserror::Error;

/// Errors raised by the algebra, graph and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has no edges")]
    Edgeless,

    #[error("vertex {0} is out of range")]
    InvalidVertex(usize),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("lcm lattice exceeds the cap of {cap} elements")]
    LatticeCapExceeded { cap: usize },

    #[error("ideal uses {nvars} variables, above the cap of {cap}")]
    VariableCapExceeded { nvars: usize, cap: usize },

    #[error("generators of I are not the disjoint union of those of J and K")]
    InvalidSplitting,

    #[error("not integrally closed")]
    NotIntegrallyClosed,

    #[error("no edge index satisfies the path formula side condition for weights {0:?}")]
    NoQualifyingIndex(Vec<u32>),

    #[error("qualifying edge indices give different path predictions for weights {weights:?}: {values:?}")]
    AmbiguousPathIndex { weights: Vec<u32>, values: Vec<i64> },

    #[error("expected a cycle with exactly one non-trivial edge, got {0:?}")]
    NotOneEdgeWeighted(Vec<u32>),

    #[error("monomial is not a minimal generator of the power")]
    NotMinimalGenerator,

    #[error("generator structure violated: {0}")]
    StructureViolation(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
