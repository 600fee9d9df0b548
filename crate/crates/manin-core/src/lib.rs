//! Exact-arithmetic construction and verification of Manin triples of complex
//! and real simple Lie algebras.
//!
//! Everything is computed over the Gaussian rationals: root systems and their
//! Killing-normalized inner products, Weyl-basis structure constants, real
//! forms cut out by semilinear conjugations, the double algebras with their
//! invariant forms, the admissible-map combinatorics, and the complementary
//! subalgebras W together with an axiomatic verifier.

pub mod bd;
pub mod doubles;
pub mod error;
pub mod liealg;
pub mod manin;
pub mod matrix;
pub mod realform;
pub mod rootsys;
pub mod scalar;
pub mod subspace;

pub use error::MathError;
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::{FieldTag, SemilinearMap, Subspace};
