//! Exact scalar, polynomial, rational-function and fixed-point-real
//! arithmetic.
//!
//! Everything upstream of quadrature is exact: scalars are arbitrary-
//! precision rationals in lowest terms, polynomials are dense ascending
//! coefficient vectors with no trailing zeros, rational functions are kept
//! reduced with a monic denominator. Quadrature uses [`BigReal`], a
//! fixed-point real (`mantissa · 2^{−scale}`) whose scale is chosen by the
//! caller as precision-plus-guard bits.

mod bigreal;
mod poly;
mod ratfunc;
mod scalar;
mod sturm;

pub use bigreal::{pi, sqrt_pi, BigReal};
pub use poly::{wronskian, Poly};
pub use ratfunc::{limit_at_infinity, residue_simple, RatFunc, Residue};
pub use scalar::{fmt_rat, parse_rat, pochhammer, rat, rat_int, to_f64, ExactScalar};
pub use sturm::{sturm_count, Bound};
