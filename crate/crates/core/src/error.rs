use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("image {value} at position {index} is outside 0..{n}")]
    ImageOutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("{f} is not a member of {family}")]
    NotInFamily { family: &'static str, f: String },

    #[error("{f} does not map Y into Y")]
    NotInvariant { f: String },

    #[error("n = {n} exceeds the budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },

    #[error("search over {len} indices exceeds the cap of {cap}")]
    SearchTooLarge { len: usize, cap: usize },

    #[error("invalid fiber profile: {0}")]
    InvalidProfile(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator set must be nonempty")]
    EmptyGenerators,

    #[error("threshold t = {t} is outside 0..={max}")]
    ThresholdOutOfRange { t: usize, max: usize },
}

impl Error {
    /// True for errors that stem from running out of an enumeration or search budget.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::SearchTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
