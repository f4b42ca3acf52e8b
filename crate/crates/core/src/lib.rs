//! Exact tropical linear programming.
//!
//! This crate solves `minimize c ⊙ x over P(A, b)` where `⊕ = max` and
//! `⊙ = +`, by pivoting between tropical basic points along tropical edges.
//! Arithmetic is exact rational throughout. Independent verification is
//! provided by a classical simplex oracle over the ordered field of
//! generalized Puiseux fractions and by brute-force enumeration of basic
//! points.

pub mod cli;
pub mod cramer;
pub mod pivot;
pub mod instance;
pub mod linalg;
pub mod oracle;
pub mod semiring;
pub mod simplex;
pub mod tangent;
