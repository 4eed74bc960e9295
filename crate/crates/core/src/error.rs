use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// All variants except [`Error::Invariant`] are domain rejections: the input
/// was well-typed but does not describe a valid object. `Invariant` means an
/// internal consistency check failed and always indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} is a self-loop at vertex `{vertex}`")]
    SelfLoop { edge: usize, vertex: String },
    #[error("vertex `{vertex}`: {reason}")]
    BadCyclicOrder { vertex: String, reason: String },
    #[error("edge {edge}: {reason}")]
    BadEdge { edge: usize, reason: String },
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("curve `{0}` is not simple")]
    NotSimple(String),
    #[error("expected a closed curve, `{0}` is an arc")]
    ExpectedClosed(String),
    #[error("expected an arc, `{0}` is a closed curve")]
    ExpectedArc(String),
    #[error("cannot compare an arc with a closed curve")]
    MixedKinds,
    #[error("arcs share an endpoint")]
    SharedEndpoint,
    #[error("arc endpoints coincide")]
    CoincidentEndpoints,
    #[error("curve `{0}` is null-homotopic and cannot be a twist core")]
    NullHomotopic(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("surface has no boundary")]
    NoBoundary,
    #[error("graph is not a tree: {0}")]
    NotTree(String),
    #[error("graph is not a single cycle: {0}")]
    NotCycle(String),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("invalid group table: {0}")]
    BadGroupTable(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("block of generalized vanishing cycles is not disjoint: {0}")]
    BlockNotDisjoint(String),
    #[error("need at least {need} curves, got {got}")]
    TooFewCurves { need: usize, got: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for internal invariant failures (bugs), false for input rejections.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
