use thiserror::Error;

use crate::gf2::SympVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vectors must have at least one qubit")]
    EmptyVector,

    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("line {line}: expected {expected} bits per half, found {found}")]
    InconsistentLength {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("input contains no vectors")]
    NoVectors,

    #[error("code is not symplectic self-orthogonal: ({left}, {right})_s = 1")]
    NotSelfOrthogonal { left: SympVector, right: SympVector },

    #[error("cosets {first} and {second} coincide (representative {rep})")]
    DuplicateCoset {
        first: usize,
        second: usize,
        rep: SympVector,
    },

    #[error("cosets belong to different quotient spaces")]
    SpaceMismatch,

    #[error("{what} is too large to enumerate (2^{log2_size} elements, limit 2^{limit})")]
    TooLarge {
        what: &'static str,
        log2_size: usize,
        limit: usize,
    },

    #[error("target distance {d} exceeds d_m = {dm}")]
    TargetExceedsDm { d: usize, dm: usize },

    #[error("no quotient space code with {target} cosets found (best {best}, exhaustive: {exhaustive})")]
    NotFound {
        target: usize,
        best: usize,
        /// When true the search was complete, so none exists among the
        /// candidates.
        exhaustive: bool,
    },

    #[error("search budget exhausted after {nodes} nodes (best {best})")]
    BudgetExhausted { nodes: u64, best: usize },

    #[error("quotient space code is not certified at distance {d}: {reason}")]
    NotCertified { d: usize, reason: String },

    #[error("state space of {n} qubits exceeds the oracle limit of {limit}")]
    StateSpaceTooLarge { n: usize, limit: usize },

    #[error("codespace construction found {found} independent states, expected {expected}")]
    RankDeficient { found: usize, expected: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
