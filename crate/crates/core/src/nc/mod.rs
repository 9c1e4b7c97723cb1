//! Noncommutative engine over `ℤ[q, q⁻¹]`: FRT relations with Laurent row and
//! column operators, monomial twists, quantum minors, the bar involution and
//! `q`-commutation exponents.

pub mod exchange;
pub mod lambda;
pub mod laurent;
pub mod minors;
pub mod poly;
pub mod text;

pub use exchange::{exchange_check, ExchangeReport, ExchangeSolution, ProductOrder};
pub use lambda::{lambda_symbolic, lambda_via_diagonals, q_exponent, DEFAULT_SYMBOLIC_CAP};
pub use laurent::Laurent;
pub use minors::{quantum_minor, validate_monomial_map, Family, MapViolation, MinorId, MonomialMap};
pub use poly::{Monomial, NCPoly, PqAlgebra};
