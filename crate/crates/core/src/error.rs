use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error in `{input}`: {reason}")]
    Syntax { input: String, reason: String },

    #[error("unknown generator `{0}` for this backend")]
    UnknownGenerator(String),

    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: String, found: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("identity input not allowed: {0}")]
    IdentityInput(&'static str),

    #[error("no result within a budget of {budget} candidates")]
    BudgetExhausted { budget: usize },

    #[error("word `{word}` is not among the {built} enumerated words covered by the built pairs")]
    PrefixTooShort { word: String, built: usize },

    #[error("membership of `{0}` is undecidable beyond the built prefix")]
    UndecidableBeyondPrefix(String),

    #[error("every generator of the finite-rank alphabet is used by the family")]
    SaturatedAlphabet,

    #[error("monomial `{0}` does not have the shape b x a x^-1 c or b x^-1 a x c")]
    Shape(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
