use thiserror::Error;

/// Errors raised by the group, algebra and index computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation {images:?}: {reason}")]
    InvalidPermutation { images: Vec<usize>, reason: String },

    #[error("group closure exceeded the maximum order {max_order}")]
    OrderExceeded { max_order: usize },

    #[error("no generators supplied")]
    NoGenerators,

    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("catalog parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is not supported (coefficients are stored in bytes)")]
    UnsupportedPrime(u64),

    #[error("subgroup is not abelian: elements {0} and {1} do not commute")]
    NotAbelian(usize, usize),

    #[error("left-normed commutator needs at least one argument")]
    EmptyArguments,

    #[error("Lie power chain did not vanish within {bound} steps")]
    BoundExceeded { bound: usize },

    #[error("input of size {size} exceeds the brute-force limit {limit}")]
    ScaleExceeded { size: usize, limit: usize },

    #[error("group algebra is not Lie nilpotent ({0})")]
    NotLieNilpotent(String),

    #[error("group is not a {p}-group")]
    NotPGroup { p: u64 },

    #[error("no witness pair found for condition {0}")]
    NoWitness(String),

    #[error("case mismatch: {0}")]
    CaseMismatch(String),

    #[error("commutator chain {chain} vanished")]
    ChainVanished { chain: String },

    #[error("step {step} disagrees with its closed form: computed {computed}, expected {expected}")]
    StepMismatch {
        step: String,
        computed: String,
        expected: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
