//! Exact-arithmetic toolkit for quantized matrix algebras.
//!
//! The crate builds the defining matrices `H` of the quasi-polynomial
//! algebras attached to the FRT, Dipper-Donkin and related quantized matrix
//! algebras, the quasi-commutation matrix `Λ = 𝕋ᵗ H 𝕋` of the initial family
//! of quantum minors, and compatible pairs `(Λ, B̃)` with `Λ B̃ = (−2 I ; 0)`.
//! A small noncommutative engine over `ℤ[q, q⁻¹]` recomputes `Λ` from the
//! algebra relations and serves as an independent oracle.
//!
//! All linear algebra is generic over an exact scalar type (see
//! [`scalar`]); the aliases below fix the arbitrary-precision choices used
//! throughout the public API.

pub mod closed;
pub mod error;
pub mod families;
pub mod json;
pub mod linalg;
pub mod nc;
pub mod report;
pub mod scalar;
pub mod seeds;
pub mod verify;

pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec};
pub use linalg::matrix::Matrix;

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar, always in lowest terms.
pub type Rat = num_rational::BigRational;
/// Dense integer matrix; carrier for `H`, `Λ`, `𝕋` and the structural blocks.
pub type IntMatrix = Matrix<Int>;
/// Dense rational matrix; carrier for inverses and the elimination artifacts.
pub type RatMatrix = Matrix<Rat>;
/// Machine-word integer matrix, handy for small oracles and literals.
pub type SmallMatrix = Matrix<i64>;
