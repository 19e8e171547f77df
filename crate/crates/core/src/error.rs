use thiserror::Error;

/// Errors raised across the library.
///
/// Each variant belongs to one of the exit-code classes the command line
/// front end reports (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("inverse of phi not constructible")]
    InverseUnavailable,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("not a free basis")]
    NotAFreeBasis,
    #[error("not invertible over Z")]
    NotInvertible,
    #[error("not an automorphism")]
    NotAutomorphism,
    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),
    #[error("not hyperbolic presentation (genus {0} < 2)")]
    NotHyperbolic(usize),
    #[error("index beyond desk scale: {0}")]
    IndexTooLarge(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("out of theorem range: {0}")]
    OutOfRange(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("table gap: {0}")]
    TableGap(String),
    #[error("not end-fixed: {0}")]
    NotEndFixed(String),
}

impl Error {
    /// Process exit code: 2 parse, 3 dimensions, 4 missing data,
    /// 5 verification, 6 out of range.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::GeneratorOutOfRange { .. } => 2,
            Error::Dimension(_) => 3,
            Error::MissingData(_) | Error::InverseUnavailable => 4,
            Error::Verification(_)
            | Error::NotAFreeBasis
            | Error::NotInvertible
            | Error::NotAutomorphism
            | Error::InvalidEndomorphism(_) => 5,
            Error::NotHyperbolic(_)
            | Error::IndexTooLarge(_)
            | Error::Budget(_)
            | Error::OutOfRange(_)
            | Error::NotASubgroup(_)
            | Error::TableGap(_)
            | Error::NotEndFixed(_) => 6,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
