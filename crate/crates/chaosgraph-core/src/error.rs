use thiserror::Error;

/// Errors raised by graph, hypergraph, homogeneous-sum and report operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex label {label} out of range [0, {n})")]
    LabelOutOfRange { label: u32, n: usize },

    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(u32),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),

    #[error("vertex {0} is isolated (pass drop_isolated to remove such vertices)")]
    IsolatedVertex(u32),

    #[error("graph is empty after dropping isolated vertices")]
    EmptyAfterDrop,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("invalid k = {k} (need 2 <= k <= {max})")]
    InvalidK { k: usize, max: usize },

    #[error("invalid m = {m} (need 1 <= m <= {n})")]
    InvalidM { m: usize, n: usize },

    #[error("exact search limited to {limit} vertices, got {n}")]
    TooLargeForExact { n: usize, limit: usize },

    #[error("{what} size {size} exceeds limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("eigensolver failed to converge on a {n} x {n} matrix")]
    NumericalFailure { n: usize },

    #[error("hyperedge {0:?} repeated")]
    DuplicateHyperedge(Vec<u32>),

    #[error("hyperedge weight {0} must be positive (values below 1e-15 count as zero)")]
    NonPositiveWeight(f64),

    #[error("hyperedge {0:?} has fewer than two vertices")]
    HyperedgeTooSmall(Vec<u32>),

    #[error("tuple {0:?} has a repeated vertex (diagonal support is not allowed)")]
    DiagonalSupport(Vec<u32>),

    #[error("coefficients are not symmetric: key {0:?} seen with values {1} and {2}")]
    NonSymmetricCoefficients(Vec<u32>, f64, f64),

    #[error("order d must be >= 2, got {0}")]
    WrongOrder(usize),

    #[error("contraction accumulation count would exceed cap {cap}")]
    MemoryLimit { cap: usize },

    #[error("wick enumeration of {quads} quadruples exceeds cap {cap}")]
    CapExceeded { quads: usize, cap: usize },

    #[error("unknown distribution {0:?}")]
    InvalidDistribution(String),

    #[error("alpha = {0} out of range (1, {1})")]
    InvalidAlpha(f64, f64),

    #[error("epsilon = {eps} out of range (0, {max})")]
    InvalidEpsilon { eps: f64, max: f64 },

    #[error("partition blocks overlap at vertex {0}")]
    OverlappingBlocks(u32),

    #[error("partition block is empty")]
    EmptyBlock,

    #[error("block vertex {0} is not contained in V'")]
    BlocksNotInVprime(u32),

    #[error("beta = {0} out of range {1}")]
    BetaOutOfRange(f64, &'static str),

    #[error("grid layout: {0}")]
    LayoutSizeMismatch(String),

    #[error("fractional partition: block {0} has size {1}, expected {2}")]
    BlockSizeError(usize, usize, usize),

    #[error("fractional partition: block {0} holds two cells of row {1}")]
    RowCollision(usize, usize),

    #[error("fractional partition is disconnected")]
    DisconnectedPartition,

    #[error("family must have at least {0} members, got {1}")]
    FamilyTooSmall(usize, usize),

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable tag for error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::LabelOutOfRange { .. } => "label_out_of_range",
            Error::LoopEdge(_) => "loop_edge",
            Error::DuplicateEdge(..) => "duplicate_edge",
            Error::IsolatedVertex(_) => "isolated_vertex",
            Error::EmptyAfterDrop => "empty_after_drop",
            Error::EmptySet => "empty_set",
            Error::InvalidK { .. } => "invalid_k",
            Error::InvalidM { .. } => "invalid_m",
            Error::TooLargeForExact { .. } => "too_large_for_exact",
            Error::SizeLimitExceeded { .. } => "size_limit_exceeded",
            Error::NumericalFailure { .. } => "numerical_failure",
            Error::DuplicateHyperedge(_) => "duplicate_hyperedge",
            Error::NonPositiveWeight(_) => "non_positive_weight",
            Error::HyperedgeTooSmall(_) => "hyperedge_too_small",
            Error::DiagonalSupport(_) => "diagonal_support",
            Error::NonSymmetricCoefficients(..) => "non_symmetric_coefficients",
            Error::WrongOrder(_) => "wrong_order",
            Error::MemoryLimit { .. } => "memory_limit",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InvalidDistribution(_) => "invalid_distribution",
            Error::InvalidAlpha(..) => "invalid_alpha",
            Error::InvalidEpsilon { .. } => "invalid_epsilon",
            Error::OverlappingBlocks(_) => "overlapping_blocks",
            Error::EmptyBlock => "empty_block",
            Error::BlocksNotInVprime(_) => "blocks_not_in_vprime",
            Error::BetaOutOfRange(..) => "beta_out_of_range",
            Error::LayoutSizeMismatch(_) => "layout_size_mismatch",
            Error::BlockSizeError(..) => "block_size_error",
            Error::RowCollision(..) => "row_collision",
            Error::DisconnectedPartition => "disconnected_partition",
            Error::FamilyTooSmall(..) => "family_too_small",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
