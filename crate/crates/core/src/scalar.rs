use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Exact integral-domain scalar used by every matrix routine.
///
/// Only exact integer types qualify: nullity is an integer invariant and
/// elimination relies on exact division. `BigInt` is the default used by the
/// graph-level API; fixed-width `i64`/`i128` work for small matrices whose
/// minors stay in range.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Integer
    + Signed
    + ToPrimitive
    + From<i8>
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion to an arbitrary-precision integer.
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// Returns `value / divisor`, panicking if the division is not exact.
///
/// Fraction-free elimination and the Faddeev–LeVerrier recurrence only ever
/// divide by exact divisors; a remainder means the algorithm is broken.
pub(crate) fn exact_div<T: Scalar>(value: T, divisor: &T) -> T {
    let (q, r) = value.div_rem(divisor);
    assert!(r.is_zero(), "inexact division by {divisor}");
    q
}
