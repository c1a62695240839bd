use thiserror::Error;

pub type Result<T, E = GlimError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GlimError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parallel edge {{{0}, {1}}}")]
    ParallelEdge(usize, usize),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("payload kinds differ: cannot compare a plain ball with a labelled ball")]
    MixedPayload,

    #[error("invalid ball: {0}")]
    InvalidBall(String),

    #[error("radius sequence has a gap: expected radius {expected}, found {found}")]
    RadiusGap { expected: usize, found: usize },

    #[error("radius mismatch: {0} vs {1}")]
    RadiusMismatch(usize, usize),

    #[error("degree-sum parity violation: n*d = {n}*{d} is odd")]
    Parity { n: usize, d: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rejection budget exhausted after {attempts} attempts: {what}")]
    BudgetExhausted { what: &'static str, attempts: usize },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("incomplete labelling: edge {0} has no label")]
    IncompleteLabelling(usize),

    #[error("unknown strategy: {0}")]
    UnknownStrategy(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
