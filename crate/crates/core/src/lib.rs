//! Quotient space quantum codes.
//!
//! Given a symplectic self-orthogonal code `C ⊆ F_2^{2n}` and a set `Ω` of
//! cosets of `C⊥s`, the direct sum of the stabilizer eigenspaces indexed by
//! `Ω` is a quantum code `((n, 2^k·L, d))` whenever the cosets are pairwise at
//! quotient distance at least `d` (with `d <= d_m`) and all of their
//! differences lie in `C(d-1)⊥s`. This crate checks those conditions,
//! searches for such `Ω`, evaluates the associated bounds, and verifies the
//! result independently against the Knill–Laflamme conditions with exact
//! state-vector arithmetic.

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod format;
pub mod oracle;
pub mod gf2;
pub mod pauli;
pub mod qsc;
pub mod quotient;
pub mod search;
pub mod stabilizer;

pub use error::{Error, Result};
pub use gf2::{rref, symplectic_inner, Gf2Subspace, SympVector};
pub use pauli::{enumerate_errors, error_count, hamming_weight, psi_map, quantum_weight, Gf4, Gf4Vector};
pub use quotient::{Coset, NormMode, QuotientSpace};
pub use stabilizer::{min_quantum_weight, DegeneracyProfile, Distance, StabilizerCode};
pub use qsc::{
    classical_union_distance, classify, max_certifiable_distance, ust_distance, verify,
    Classification, Label, QscCode, QsqcCertificate, Rejection, Status, UstReport,
};
pub use search::{candidate_cosets, extend, find_qsc, SearchProblem, SearchResult, Strategy, Target};
pub use bounds::{
    general_hamming_compare, general_hamming_compare_at, gv_type, hamming_type, singleton,
    singleton_for, BoundDetail, BoundReport,
};
pub use oracle::{
    apply_error, check_qsqc, codespace_basis, kl_check, lift_generator, projector_check, qsqc_basis,
    theorem1_check, CosetBasis, ExactState, KlMode, KlOptions, KlReport, PauliOperator,
};
