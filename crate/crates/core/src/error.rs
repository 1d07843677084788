use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<usize>, reason: String },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("invalid vertex subset {subset:?}: {reason}")]
    InvalidSubset { subset: Vec<usize>, reason: String },
    #[error("uniformity mismatch: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no {ell}-tree of order {n} exists for k={k}")]
    UnreachableOrder { k: usize, ell: usize, n: usize },
    #[error("gadget needs at least 3 leaves (t >= 2), got t={0}")]
    TooFewLeaves(usize),
    #[error("found only {found} of {wanted} pairwise non-isomorphic gadgets after {tries} permutations")]
    ExhaustedPermutations { wanted: usize, found: usize, tries: usize },
    #[error("{what}: search budget of {limit} nodes exceeded")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("embedding stuck at step {step}, attachment set {attachment:?}")]
    EmbeddingStuck { step: usize, attachment: Vec<usize> },
    #[error("coloring has {got} entries but host has {expected} edges")]
    ColoringLength { expected: usize, got: usize },
    #[error("base coloring already contains a monochromatic clique of order {0} on {1:?}")]
    InvalidBase(usize, Vec<usize>),
    #[error("trash member {0:?} is not a clique of the graph")]
    NonCliqueMember(Vec<usize>),
    #[error("overlap violation: {0}")]
    Overlap(String),
    #[error("edge probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("no host with at most {vcap} vertices and {ecap} edges arrows the pattern")]
    CapsTooSmall { vcap: usize, ecap: usize },
    #[error("no upper-bound strategy produced a verified host (lower bound {lower})")]
    NoStrategySucceeded { lower: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
