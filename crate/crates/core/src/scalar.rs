//! Exact scalar abstraction shared by all matrix code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use std::fmt::{Debug, Display};

/// An exact, signed commutative ring element. Implemented for machine and
/// arbitrary-precision integers and for rationals; floats are deliberately
/// left out.
pub trait Scalar: Clone + Eq + Ord + Debug + Display + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Whether the value is an integer (always true for integer types).
    fn is_integral(&self) -> bool;
}

/// Scalars with Euclidean division, used by integer-only reductions.
pub trait IntScalar: Scalar + Integer {}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_integral(&self) -> bool {
        true
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_integral(&self) -> bool {
        true
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Scalar + Integer + Clone,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v))
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

impl IntScalar for i64 {}
impl IntScalar for BigInt {}

/// Integer embedding into the rationals.
pub fn rat(v: &BigInt) -> crate::Rat {
    crate::Rat::from_integer(v.clone())
}

/// Rational `p/q` from machine integers.
pub fn ratio(p: i64, q: i64) -> crate::Rat {
    crate::Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
