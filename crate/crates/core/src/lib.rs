//! Exact nullspace analysis of simple graphs.
//!
//! The adjacency nullspace splits the vertices into core vertices (non-zero
//! in some kernel vector), their neighbours `N(CV)` and the remote
//! core-forbidden vertices `CFV_R`. This crate computes that split with
//! exact integer arithmetic, checks the structural results built on it
//! (slim graphs, minimal configurations, subdivisions of trees) and searches
//! for edge additions that keep the nullity, the core set or the whole
//! nullspace unchanged.
//!
//! Matrix routines are generic over [`Scalar`]; the graph-level API uses
//! arbitrary-precision integers through the aliases below.

pub mod analysis;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod minimal_config;
pub mod perturbation;
pub mod report;
mod scalar;
pub mod trees;
pub mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::{Graph, Origin, VertexProvenance};
pub use linalg::{CharPoly, KernelBasis, Matrix, RationalVector};
pub use scalar::Scalar;

/// Arbitrary-precision integer matrix.
pub type IntMatrix = Matrix<BigInt>;
/// Arbitrary-precision rational vector.
pub type RatVector = RationalVector<BigInt>;
/// Rational entry type of [`RatVector`].
pub type Rational = BigRational;
