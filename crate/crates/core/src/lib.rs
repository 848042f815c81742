//! Exact bivariate polynomial interpolation on planar node sets.
//!
//! The crate decides `n`-independence of node sets over the rationals,
//! builds fundamental polynomials (optionally as products of lines and
//! irreducible conics), solves Lagrange interpolation problems, and
//! searches for configurations where factored fundamentals cease to exist.
//!
//! Linear algebra and polynomial arithmetic are generic over [`Scalar`];
//! geometry works over [`Rational`] because its predicates must be exact.

pub mod cli;
pub mod error;
pub mod explorer;
pub mod geometry;
pub mod independence;
pub mod interpolation;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod synthesis;

pub use error::{Error, Result};
pub use geometry::{Conic, Line, Node};
pub use independence::{DependenceKind, DependenceWitness, NodeSet};
pub use poly::{BivariatePoly, Factor, FactoredPoly, Monomial};
pub use scalar::Scalar;
pub use synthesis::{ConditionReport, CoverMode};

/// Exact rational number; the coordinate field of every node.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer used for canonical curve coefficients.
pub type Integer = num_bigint::BigInt;
/// Dense rational matrix.
pub type QMatrix = linalg::Matrix<Rational>;
/// Rational vector.
pub type QVector = Vec<Rational>;
/// Element of Π_n with rational coefficients.
pub type QPoly = poly::BivariatePoly<Rational>;
