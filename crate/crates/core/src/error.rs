use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse permutation {text:?}: {reason}")]
    PermParse { text: String, reason: String },

    #[error("{0:?} is not a permutation of 1..={len}", len = .0.len())]
    NotBijection(Vec<usize>),

    #[error("permutation entries must be positive")]
    ZeroEntry,

    #[error("permutation {perm} does not fit in a window of size {n}")]
    WindowExceeds { perm: Permutation, n: usize },

    #[error("operation is undefined for the identity permutation")]
    Identity,

    #[error("row {row} is not a pivot row of {perm}")]
    NotPivotRow { perm: Permutation, row: usize },

    #[error("march row set must be non-empty")]
    EmptyMarch,

    #[error("adding a box at ({row}, {col}) to {perm} does not yield a permutation diagram")]
    InvalidAddBox { perm: Permutation, row: usize, col: usize },

    #[error("box set is not the diagram of a permutation")]
    NotADiagram,

    #[error("march tree exceeded the node ceiling of {0}")]
    NodeCeiling(usize),

    #[error("window {window} exceeds the oracle ceiling of {ceiling}")]
    OracleCeiling { window: usize, ceiling: usize },

    #[error("truncation index {t} is outside 1..={max}")]
    TruncationOutOfRange { t: usize, max: usize },

    #[error("cannot parse polynomial {text:?}: {reason}")]
    PolyParse { text: String, reason: String },

    #[error("zero polynomial has no lowest-degree part")]
    ZeroPolynomial,

    #[error("divided difference in x{0} left a non-zero remainder")]
    NonExactDivision(usize),

    #[error("basis expansion did not terminate within {0} steps")]
    ExpansionDiverged(usize),

    #[error("leading term of the Grothendieck polynomial of {0} is not its Lehmer monomial")]
    LeadingTerm(Permutation),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
