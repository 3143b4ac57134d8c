//! Minimization and structural auditing of DNFs for Boolean functions with
//! few zeros.
//!
//! A function of `n` variables that vanishes on `k` points is stored as its
//! zero matrix ([`ZeroMatrix`]). A DNF of the function is a covering of the
//! remaining points of the cube by faces that avoid every zero. The crate
//! provides:
//!
//! * [`model`]: the zero-matrix model and class predicates,
//! * [`canon`]: variable permutations with negation, proper and reduced
//!   forms, and the generators for the complete and extremal functions,
//! * [`implicants`]: literal vectors, decompositions and prime implicants,
//! * [`solver`]: exact minimum-rank and minimum-length DNFs,
//! * [`analysis`]: near-zero points, conjunction classes, lower bounds and
//!   randomized experiments.

pub mod analysis;
pub mod bits;
pub mod canon;
pub mod dnf;
pub mod error;
pub mod implicants;
pub mod model;
pub mod solver;

pub use bits::{hamming_adjacent, weight, BitVector};
pub use canon::{
    apply_transform, complete_function, compose_reduction, d2_chain, extract_reduced, hk_function,
    to_proper, ColumnGrouping, HkFunction, SpTransform,
};
pub use dnf::{Conjunction, Dnf, Literal, Objective, Polarity};
pub use error::{Error, Result};
pub use implicants::{
    conjunction_from_decomposition, enumerate_prime_implicants, is_decomposition, is_implicant,
    is_orthogonal_decomposition, is_prime_implicant, literal_vector,
};
pub use model::{classify_matrix, ClassMembership, FewZeroFunction, Limits, ZeroMatrix};
pub use solver::{
    all_minimal_dnfs, all_minimal_dnfs_with_budget, greedy_dnf, minimal_dnf,
    minimal_dnf_with_budget, realizes, realizes_with_budget, Budget, SolveResult,
};

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
