//! Exact integer and rational linear algebra, generic over [`Scalar`](crate::Scalar).

mod charpoly;
mod elimination;
mod matrix;
mod vector;

pub use charpoly::CharPoly;
pub use elimination::KernelBasis;
pub use matrix::Matrix;
pub use vector::RationalVector;
