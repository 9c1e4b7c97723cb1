//! Exact dense linear algebra.

pub mod det;
pub mod matrix;
pub mod skew;
pub mod solve;

pub use det::{det, rank};
pub use matrix::{block_assemble, Matrix};
pub use skew::{skew_normal_form, SkewForm};
pub use solve::{inverse, inverse_rat, kernel, kernel_rat, rref, KernelBasis};

use crate::error::{Error, Result};
use crate::{Int, IntMatrix, Rat, RatMatrix};

pub fn to_rat(m: &IntMatrix) -> RatMatrix {
    m.map(|v| Rat::from_integer(v.clone()))
}

/// Integer matrix when every entry is integral.
pub fn to_int(m: &RatMatrix) -> Option<IntMatrix> {
    if m.entries().iter().all(|v| v.is_integer()) {
        Some(m.map(|v| v.to_integer()))
    } else {
        None
    }
}

pub fn to_int_checked(m: &RatMatrix, what: &str) -> Result<IntMatrix> {
    to_int(m).ok_or_else(|| Error::Precondition(format!("{what} is not an integer matrix")))
}

/// Integer power with negative exponents allowed for unimodular matrices.
pub fn int_pow(m: &IntMatrix, e: i64) -> Result<IntMatrix> {
    if e >= 0 {
        return Ok(m.pow(e as u32));
    }
    let inv = to_int_checked(&inverse(m)?, "inverse")?;
    Ok(inv.pow((-e) as u32))
}

pub fn int_from(v: i64) -> Int {
    Int::from(v)
}
