use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dataset needs at least one labeled and one unlabeled sample (labeled: {labeled}, unlabeled: {unlabeled})")]
    EmptyClass { labeled: usize, unlabeled: usize },

    #[error("score {0} is not finite")]
    NonFiniteScore(f64),

    #[error("invalid mixture parameters: {0}")]
    InvalidParams(String),

    #[error("beta - alpha = {gap} is below the minimum separation {min}")]
    DegenerateSeparation { gap: f64, min: f64 },

    #[error("precision is undefined: {0}")]
    UndefinedPrecision(&'static str),

    #[error("labeled fraction c is required for this conversion")]
    MissingLabeledFraction,

    #[error("curve points are not sorted by x (index {index})")]
    UnsortedCurve { index: usize },

    #[error("no recovered operating point survived range filtering ({input} candidates)")]
    EmptyRecoveredCurve { input: usize },

    #[error("pool too small: need {needed_pos} positives and {needed_neg} negatives, have {have_pos} and {have_neg}")]
    InsufficientPool {
        needed_pos: usize,
        needed_neg: usize,
        have_pos: usize,
        have_neg: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("corrected AUC {raw} lies outside [0, 1]")]
    Infeasible { raw: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in machine-readable CLI errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyClass { .. } => "EmptyClass",
            Error::NonFiniteScore(_) => "NonFiniteScore",
            Error::InvalidParams(_) => "InvalidParams",
            Error::DegenerateSeparation { .. } => "DegenerateSeparation",
            Error::UndefinedPrecision(_) => "UndefinedPrecision",
            Error::MissingLabeledFraction => "MissingLabeledFraction",
            Error::UnsortedCurve { .. } => "UnsortedCurve",
            Error::EmptyRecoveredCurve { .. } => "EmptyRecoveredCurve",
            Error::InsufficientPool { .. } => "InsufficientPool",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse { .. } => "ParseError",
            Error::Infeasible { .. } => "Infeasible",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
