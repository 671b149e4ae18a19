//! Exact-arithmetic models of the cohomology rings `H*(G; F)` of the compact,
//! 1-connected simple Lie groups, with `F` one of `Z`, `Q` or a prime field.
//!
//! The construction is driven entirely by a small table of invariants per
//! group (the *basic data*): counts `(k, m)`, the degrees of the even
//! special classes `y_j` with their additive orders `p_j` and nilpotency
//! exponents `k_j`, and the degrees of the remaining relations `e_i`.  From
//! these the crate derives
//!
//! * the Chow rings `A*(G; F)` (truncated polynomial algebras on the `y_j`),
//! * the cohomology rings `H*(G; F)` for field coefficients, as Chow part
//!   tensor a simple system of odd generators with explicit square rules,
//! * the Bockstein-style differentials `delta_p` and their images, which
//!   realize the `p`-torsion ideals of the integral ring,
//! * the integral cohomology `H*(G; Z)` as free exterior part plus
//!   per-prime torsion components with full cross multiplication,
//! * Poincare series, duality pairings and consistency checks tying all
//!   coefficient systems together.
//!
//! Everything is exact: scalars are arbitrary-precision integers, rationals
//! or prime-field residues.  Every closed-form count carried by the library
//! is re-derived by an independent brute-force route somewhere in the test
//! suite.

pub mod basic_data;
pub mod differentials;
pub mod fp_linalg;
pub mod graded_algebra;
pub mod integral;
pub mod poincare;
pub mod rings;
pub mod scalar;
pub mod torsion;
pub mod verify;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
