use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown atom '{name}' at offset {offset}")]
    UnknownAtom { name: String, offset: usize },

    #[error("universe of {size} atoms exceeds the limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("duplicate atom '{0}'")]
    DuplicateAtom(String),

    #[error("'{0}' is not a valid atom name")]
    InvalidAtomName(String),

    #[error("'{0}' is not a literal")]
    NotALiteral(String),

    #[error("remainder enumeration exceeded the work limit of {limit} candidates")]
    WorkLimitExceeded { limit: usize },

    #[error("selection chose no remainder from a non-empty set")]
    EmptySelection,

    #[error("selection index {index} out of range for {len} remainders")]
    SelectionOutOfRange { index: usize, len: usize },

    #[error("conjunction is not an element of the visible set")]
    ConjunctNotVisible,

    #[error("line {line}: {message}")]
    Scenario { line: usize, message: String },
}

impl Error {
    /// Exit status convention shared by the command-line tools: 3 for work
    /// limit overflow, 2 for everything else (validation).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::WorkLimitExceeded { .. } => 3,
            _ => 2,
        }
    }
}
