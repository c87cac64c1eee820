//! Exact construction and verification of recurrence relations for
//! exceptional orthogonal polynomials.
//!
//! Exceptional (X_j) Hermite, Laguerre and Jacobi families arise from
//! one-step Darboux transformations of the classical families. Each valid
//! `(family, type, j, parameters)` combination yields a sequence of monic
//! polynomials with a gapped degree set, and multiplying a member by a fixed
//! degree-(j+1) polynomial expands back into the family with a band of at
//! most 2j+3 terms. This crate constructs those families, computes the band
//! coefficients exactly over arbitrary-precision rationals, and verifies the
//! algebraic and analytic invariants they must satisfy:
//!
//! - [`ratpoly`]: exact rational scalars, dense polynomials, reduced rational
//!   functions, Sturm root counting, and fixed-point big reals.
//! - [`classical`]: classical monic families (recurrence and Rodrigues
//!   routes), gauge data (log-derivatives, eigenvalues, norm ratios) and the
//!   seed polynomials of the gauged families.
//! - [`xop`]: validated exceptional-family descriptors, member construction,
//!   the first-order Darboux operator, and weight data.
//! - [`recurrence`]: band multipliers (raw and closed conventions), exact
//!   expansion in the exceptional basis, the 2j+3- and 4j+1-term relations,
//!   and the degree-(j+1) decomposition constants for type-3 families.
//! - [`quadcheck`]: arbitrary-precision Gauss rules and Gram-matrix
//!   orthogonality cross-checks.
//! - [`checks`] / [`cli`]: the named verification checks and the `xoprec`
//!   command-line interface (`table`, `verify`, `sweep`, `eval`, `gram`).
//!
//! All algebraic results are exact (`BigRational`); quadrature results carry
//! an explicit binary precision. Failures of structural invariants surface as
//! dedicated [`Error`] variants carrying full reproduction data.

pub mod checks;
pub mod classical;
pub mod cli;
pub mod error;
pub mod quadcheck;
pub mod ratpoly;
pub mod recurrence;
pub mod xop;

pub use error::Error;
