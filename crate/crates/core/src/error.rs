use thiserror::Error;

use crate::subset::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} outside supported range 1..=128")]
    GroundSize(usize),

    #[error("element {element} outside ground set 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("duplicate member {0}")]
    DuplicateMember(Subset),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("member {index} ({set}) has size {size}, expected a {expected}-uniform family")]
    NotUniform {
        index: usize,
        set: Subset,
        size: usize,
        expected: usize,
    },

    #[error("member {index} ({set}) is shattered, so the VC-dimension exceeds {d}")]
    Shattered { index: usize, set: Subset, d: usize },

    #[error("invalid witness for member {index}: {message}")]
    InvalidWitness { index: usize, message: String },

    #[error("{0}")]
    Precondition(String),

    #[error("node budget of {0} exhausted")]
    BudgetExhausted(u64),
}
