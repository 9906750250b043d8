//! Exact Weingarten calculus for the unitary and orthogonal groups.
//!
//! The crate computes Weingarten functions as rational functions of the
//! dimension `N` by two independent routes (character expansions and Gram
//! matrix inversion), counts the classical factorization families whose
//! numbers appear as `1/N` coefficients, and enumerates the marked-vertex
//! factorization classes that encode maps on surfaces.

pub mod algebra;
pub mod cache;
pub mod characters;
pub mod combinatorics;
pub mod counts;
pub mod enumeration;
pub mod error;
pub mod weingarten;
pub mod wick;

pub use algebra::{BigRational, LaurentSeries, PolynomialN, RationalFunctionN};
pub use combinatorics::{Domain, Label, Matching, Partition, Permutation};
pub use error::{Result, WgError};
