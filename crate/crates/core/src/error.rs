use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate index tuple {0:?}")]
    DuplicateIndex(Vec<usize>),
    #[error("index tuple has {found} components, expected {expected}")]
    BadArity { expected: usize, found: usize },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("order {found} is too small, need at least {min}")]
    OrderTooSmall { min: usize, found: usize },
    #[error("partition has {0} part(s); triangular kinds need at least 2")]
    PartitionTooCoarse(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension {dim} exceeds the limit {max} for this operation")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("tensor is not diagonal")]
    NotDiagonal,
    #[error("blocked determinant/spectrum formulas do not hold for third-type blocked tensors")]
    ThirdTypeUnsupported,
    #[error("no closed-form determinant for diagonal block {0}")]
    BlockDetUnavailable(usize),
    #[error("no closed-form spectrum for diagonal block {0}")]
    BlockSpectrumUnavailable(usize),
    #[error("tensor has a negative entry at {0:?}")]
    NegativeEntry(Vec<usize>),
    #[error(
        "power iteration did not converge: bounds [{lower}, {upper}] after {iterations} iterations"
    )]
    NoConvergence {
        lower: f64,
        upper: f64,
        iterations: usize,
    },
    #[error("tensor has no left inverse")]
    NoLeftInverse,
    #[error("tensor is not of the form I_m Q: entry {index:?} is {found}, reconstruction gives {expected}")]
    NotRightForm {
        index: Vec<usize>,
        expected: f64,
        found: f64,
    },
    #[error("tensor has no right inverse: {0}")]
    NotRightInvertible(String),
    #[error("tensor is not a Z-tensor")]
    NotZTensor,
    #[error("index set is not a reducing set")]
    NotReducingSet,
    #[error("tensor has no third-type normal form")]
    NoThirdTypeNormalForm,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid JSON: {0}")]
    InvalidJson(String),
}

impl Error {
    /// Stable error code used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DuplicateIndex(_) => "DuplicateIndex",
            Error::BadArity { .. } => "BadArity",
            Error::EmptyIndexSet => "EmptyIndexSet",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::PartitionTooCoarse(_) => "PartitionTooCoarse",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::NotDiagonal => "NotDiagonal",
            Error::ThirdTypeUnsupported => "ThirdTypeUnsupported",
            Error::BlockDetUnavailable(_) => "BlockDetUnavailable",
            Error::BlockSpectrumUnavailable(_) => "BlockSpectrumUnavailable",
            Error::NegativeEntry(_) => "NegativeEntry",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NoLeftInverse => "NoLeftInverse",
            Error::NotRightForm { .. } => "NotRightForm",
            Error::NotRightInvertible(_) => "NotRightInvertible",
            Error::NotZTensor => "NotZTensor",
            Error::NotReducingSet => "NotReducingSet",
            Error::NoThirdTypeNormalForm => "NoThirdTypeNormalForm",
            Error::SingularMatrix => "SingularMatrix",
            Error::InvalidHypergraph(_) => "InvalidHypergraph",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::InvalidJson(_) => "InvalidJson",
        }
    }
}
