use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("negative exponent for non-Laurent symbol {0}")]
    NegativeExponent(String),
    #[error("term {term}: coefficient {coeff} is not divisible by {den}")]
    Divisibility {
        term: String,
        coeff: String,
        den: String,
    },
    #[error("degree window exceeded: {0}")]
    Window(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not in the lattice at weight {weight}; residual {residual}")]
    NotInLattice { weight: i64, residual: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::AlphabetMismatch => "alphabet_mismatch",
            Error::NegativeExponent(_) => "negative_exponent",
            Error::Divisibility { .. } => "divisibility",
            Error::Window(_) => "window_overflow",
            Error::Invalid(_) => "invalid_input",
            Error::NotInLattice { .. } => "not_in_lattice",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
