use std::fmt;

/// Which resource cap stopped a Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    PairQueue,
    StoredTerms,
    WallTime,
    Cancelled,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::PairQueue => "S-pair queue length",
            Resource::StoredTerms => "stored terms",
            Resource::WallTime => "wall-time budget",
            Resource::Cancelled => "cancellation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("too many variables ({0}); at most {max} are supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("resource limit reached ({resource}) after {pairs} pairs, basis size {basis}")]
    ResourceLimit {
        resource: Resource,
        pairs: usize,
        basis: usize,
    },
    #[error("ideal carries no Gröbner basis")]
    MissingBasis,
    #[error("model {model} is not available over {field}")]
    UnsupportedFieldForModel { model: String, field: String },
    #[error("arrangement contains duplicate lines")]
    DuplicateLines,
    #[error("arrangement is not essential (all lines are concurrent)")]
    NonEssential,
    #[error("group closure exceeded {0} elements")]
    ClosureBoundExceeded(usize),
    #[error("characteristic {0} divides the group order")]
    BadCharacteristic(u64),
    #[error("interpolation kernel is empty")]
    EmptyKernel,
    #[error("prime {p} exceeds the scan bound {bound}")]
    PrimeTooLarge { p: u64, bound: u64 },
    #[error("non-ordinary singularities are not supported")]
    NonOrdinaryUnsupported,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
