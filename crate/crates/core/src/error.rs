use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field order {0} is too large for packed finite-field arithmetic")]
    FieldTooLarge(u64),
    #[error("minimal polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("minimal polynomial is reducible over the base field ({0})")]
    Reducible(String),
    #[error("extension is not separable: gcd(m, m') is not a constant; base change requires a separable extension")]
    Inseparable,
    #[error("cannot certify irreducibility of a degree {0} polynomial over Q; pass --assume-irreducible")]
    IrreducibilityUndecided(usize),
    #[error("operation requires an extension field")]
    NotExtension,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("relations are not admissible: {0}")]
    Admissibility(String),
    #[error("arrow ideal is not nilpotent modulo the relations within the length cap {cap}")]
    NilpotencyCap { cap: usize },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("objects belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("algebra is not basic: projectives at slots {0} and {1} are isomorphic")]
    NonBasic(usize, usize),
    #[error("cannot decide over this field: {0}")]
    Undecided(String),
    #[error("search space of about {estimate} candidates exceeds the cap {cap}")]
    SearchCap { estimate: u128, cap: u128 },
    #[error("exhaustive enumeration needs a finite base field, got {0}")]
    InfiniteField(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SearchCap { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}
