use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights must be integers >= 2, got {0:?}")]
    InvalidWeight(Vec<i64>),
    #[error("expected exactly three weights, got {0}")]
    WrongArity(usize),
    #[error("operands belong to different weight triples")]
    WeightMismatch,
    #[error("unsupported interval shape: [{lo}, {hi}] is not a box")]
    NotABox { lo: String, hi: String },
    #[error("{0} is not an interior vector 0 <= x <= 2w+c")]
    NotInBox(String),
    #[error("torsion length must be positive, got {0}")]
    TorsionLength(i64),
    #[error("no extension bundle matches class {0} in the search window")]
    NoMatchingBundle(String),
    #[error("class {class} matches non-equivalent extension bundles: {hits}")]
    AmbiguousBundle { class: String, hits: String },
    #[error("slope undefined for rank zero")]
    ZeroRank,
    #[error("weight triple {0} is not of genus one")]
    NotGenusOne(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("formal object {0} has no computable shift")]
    FormalShift(String),
    #[error("unknown vertex id {0}")]
    UnknownVertex(i64),
    #[error("quiver invariant violated: {0}")]
    InvalidQuiver(String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
