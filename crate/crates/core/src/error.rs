use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} appears more than once")]
    DuplicateElement(usize),
    #[error("element {element} is outside 1..={n}")]
    OutOfRange { element: usize, n: usize },
    #[error("empty block")]
    EmptyBlock,
    #[error("ground set size {0} exceeds the limit of {max}", max = crate::partition::MAX_N)]
    TooLargeN(usize),
    #[error("invalid label array: {0}")]
    InvalidLabels(String),
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("k must be between 1 and {max}, got {0}", max = crate::crossing::MAX_K)]
    InvalidK(usize),
    #[error("oracle refuses {0} arcs (limit {max})", max = crate::crossing::ORACLE_MAX_ARCS)]
    TooManyArcs(usize),
    #[error("expected a partition of the full ground set, element {0} is absent")]
    NotFull(usize),
    #[error("n = {n} exceeds the enumeration budget of {cap}")]
    OutOfBudget { n: usize, cap: usize },
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
    #[error("binomial({n}, {i}) out of range")]
    BinomialRange { n: u64, i: u64 },
    #[error("unknown OEIS id {0}")]
    UnknownId(String),
    #[error("malformed b-file line {line}: {text:?}")]
    BFileParse { line: usize, text: String },
    #[error("network error: {0}")]
    Network(String),
    #[error("sequences do not overlap")]
    NoOverlap,
    #[error("diagram too large: n = {0}")]
    TooLarge(usize),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
