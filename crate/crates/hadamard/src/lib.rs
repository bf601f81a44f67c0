//! Complex Hadamard matrices: construction, verification, canonical forms,
//! equivalence decisions and numerical search.
//!
//! An n x n matrix with unit-modulus entries is Hadamard when H H* = n I.
//! This crate provides
//!
//! - [`catalog`]: generators for Fourier and tensor-product matrices, the
//!   fourth-root order-6 matrices, the cyclic-6-roots matrix, and the
//!   one-parameter family of self-adjoint order-6 Hadamard matrices
//!   H(theta), together with dephasing and the Hadamard predicate;
//! - [`equivalence`]: certificates witnessing H2 = P1 D1 H1 D2 P2, an
//!   invariant fingerprint, exhaustive equivalence search for small orders,
//!   and classification of order-6 self-adjoint matrices onto the family;
//! - [`defect`]: the first-order deformation system of a Hadamard matrix,
//!   its numerical nullity, and the span-condition isolation test;
//! - [`search`]: seeded multistart gradient descent on the unitarity
//!   penalty over phase coordinates, with constraint handling and outcome
//!   classification;
//! - [`io`]: a JSON matrix-file format and certificate files;
//! - [`cli`]: the `hadamard` command-line interface.
//!
//! The `examples/` directory walks through each capability; start with
//! `family_tour`.

pub mod catalog;
pub mod cli;
pub mod defect;
pub mod equivalence;
pub mod io;
pub mod linalg;
pub mod search;

pub use catalog::{FamilyPoint, HadamardCheckReport, UnimodularMatrix};
pub use defect::DefectReport;
pub use equivalence::{EquivalenceCertificate, Fingerprint};
pub use linalg::{ComplexMatrix, RealMatrix, Tolerance};
pub use search::{SearchOutcome, SearchProblem};
