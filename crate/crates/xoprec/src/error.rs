//! Error taxonomy.
//!
//! Variants fall into three groups:
//!
//! - *Input errors* (`InvalidParameter`, `NonexistentCombination`, …):
//!   the request itself is malformed or refers to a combination that does
//!   not exist.
//! - *Degeneracy reports* (`DegenerateDivisor`, `EigenvalueCollision`,
//!   `SeedHasRootsInDomain`, `RecurrenceUndefined`, `RodriguesUndefined`):
//!   the combination exists in general but the supplied parameters are on a
//!   degenerate stratum.
//! - *Identity violations* (`SparsityViolation`, `UnrepresentableTarget`,
//!   `IdentityViolation`, `ClosedFormMismatch`, `NonPolynomialResult`):
//!   an exact structural invariant failed. These are fatal diagnostics — if
//!   one fires on a validated spec it falsifies the underlying theory (or a
//!   transcription of it) and the variant carries full reproduction data.
//!
//! [`Error::diagnostic`] serializes any variant, reproduction data included,
//! as a JSON object for reports.

use serde_json::{json, Value};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input: out-of-range parameter, unparsable rational, zero
    /// affine scale, unknown name, and similar.
    #[error("invalid parameter: {reason}")]
    InvalidParameter {
        /// Human-readable description of the rejected input.
        reason: String,
    },

    /// The requested (family, type, j) combination does not exist.
    #[error("no such exceptional family: {family} type {xtype}, j = {j}: {reason}")]
    NonexistentCombination {
        /// Family name (`hermite`, `laguerre`, `jacobi`).
        family: String,
        /// Type label (`I`, `II`, `III`).
        xtype: String,
        /// Transformation order.
        j: u32,
        /// Why the combination is ruled out.
        reason: String,
    },

    /// Under `Strictness::Orthogonal` the seed polynomial must be root-free
    /// on the closure of the weight's domain; it is not.
    #[error(
        "seed polynomial {seed} for {family} type {xtype}, j = {j}, params {params} \
         has {count} root(s) in the closed domain"
    )]
    SeedHasRootsInDomain {
        family: String,
        xtype: String,
        j: u32,
        /// Parameter values, e.g. `a=1/2, b=1/2`.
        params: String,
        /// The offending seed polynomial (human-readable).
        seed: String,
        /// Number of distinct roots in the domain closure.
        count: usize,
    },

    /// A type-specific eigenvalue-gap divisor vanishes at a degree inside
    /// the family's degree set, so that member cannot be constructed.
    #[error(
        "divisor vanishes at degree n = {n} for {family} type {xtype}, j = {j}, params {params}"
    )]
    DegenerateDivisor {
        family: String,
        xtype: String,
        j: u32,
        params: String,
        /// Degree at which the construction's divisor vanishes.
        n: u64,
    },

    /// Eigenvalues that the construction requires to be pairwise distinct
    /// collide at the supplied parameters (this includes gauge families whose
    /// polynomial members become undefined).
    #[error("eigenvalue collision for {family} type {xtype}, j = {j}, params {params}: {reason}")]
    EigenvalueCollision {
        family: String,
        xtype: String,
        j: u32,
        params: String,
        reason: String,
    },

    /// The classical three-term recurrence hit a vanishing denominator at
    /// the supplied parameters.
    #[error("three-term recurrence undefined at degree {n}: {reason}")]
    RecurrenceUndefined { n: u64, reason: String },

    /// The Rodrigues route is undefined (vanishing normalizing factor) or
    /// its telescoped expansion failed to close into a polynomial.
    #[error("Rodrigues construction undefined: {reason}")]
    RodriguesUndefined { reason: String },

    /// `residue_simple` was asked for a residue at a pole of multiplicity
    /// greater than one.
    #[error("pole at {at} is not simple (multiplicity {multiplicity})")]
    NotASimplePole { at: String, multiplicity: usize },

    /// A closed-form band multiplier disagrees with the antiderivative
    /// definition by more than an additive constant.
    #[error(
        "closed multiplier mismatch for {context}: closed − raw = {difference} is not constant"
    )]
    ClosedFormMismatch {
        context: String,
        raw: String,
        closed: String,
        difference: String,
    },

    /// An exact band coefficient appeared outside the guaranteed band.
    /// Carries everything needed to reproduce: the family/type/j label, the
    /// member degree, the offending shift and its (nonzero) coefficient.
    #[error("sparsity violation for {context}: coefficient {coeff} at shift {l} (band |l| ≤ {band}) expanding degree n = {n}")]
    SparsityViolation {
        context: String,
        n: u64,
        /// Offending shift.
        l: i64,
        /// Its exact nonzero coefficient.
        coeff: String,
        /// The guaranteed band half-width.
        band: i64,
    },

    /// Exact expansion in the exceptional basis left a nonzero remainder at
    /// a degree the basis does not contain.
    #[error(
        "unrepresentable target for {context}: nonzero remainder of degree {degree}: {remainder}"
    )]
    UnrepresentableTarget {
        context: String,
        /// Degree of the leading unrepresentable term.
        degree: u64,
        /// The full remainder polynomial (human-readable).
        remainder: String,
    },

    /// A polynomial identity that must hold exactly does not.
    #[error(
        "identity violation in {context}: lhs = {lhs}, rhs = {rhs}, difference = {difference}"
    )]
    IdentityViolation {
        context: String,
        lhs: String,
        rhs: String,
        difference: String,
    },

    /// A Darboux application or weight fold that must produce a polynomial
    /// left a nontrivial denominator.
    #[error("non-polynomial result in {context}: residual denominator {denominator}")]
    NonPolynomialResult {
        context: String,
        denominator: String,
    },

    /// Quadrature failed to reach the requested agreement before the order
    /// cap.
    #[error("quadrature did not converge: order cap {order_cap} reached, last delta 2^{last_delta_log2}")]
    NonConvergence {
        order_cap: u32,
        /// log2 of the last inter-order delta (rounded up).
        last_delta_log2: i64,
    },

    /// Configuration/usage error at the CLI boundary (maps to exit code 2).
    #[error("configuration error: {reason}")]
    Config { reason: String },

    /// I/O failure at the CLI boundary.
    #[error("i/o error: {reason}")]
    Io { reason: String },
}

impl Error {
    /// Serializes the error, reproduction data included, as a JSON object
    /// with a stable `kind` tag.
    pub fn diagnostic(&self) -> Value {
        match self {
            Error::InvalidParameter { reason } => {
                json!({"kind": "invalid_parameter", "reason": reason})
            }
            Error::NonexistentCombination {
                family,
                xtype,
                j,
                reason,
            } => json!({
                "kind": "nonexistent_combination",
                "family": family, "type": xtype, "j": j, "reason": reason,
            }),
            Error::SeedHasRootsInDomain {
                family,
                xtype,
                j,
                params,
                seed,
                count,
            } => json!({
                "kind": "seed_has_roots_in_domain",
                "family": family, "type": xtype, "j": j, "params": params,
                "seed": seed, "root_count": count,
            }),
            Error::DegenerateDivisor {
                family,
                xtype,
                j,
                params,
                n,
            } => json!({
                "kind": "degenerate_divisor",
                "family": family, "type": xtype, "j": j, "params": params, "n": n,
            }),
            Error::EigenvalueCollision {
                family,
                xtype,
                j,
                params,
                reason,
            } => json!({
                "kind": "eigenvalue_collision",
                "family": family, "type": xtype, "j": j, "params": params, "reason": reason,
            }),
            Error::RecurrenceUndefined { n, reason } => {
                json!({"kind": "recurrence_undefined", "n": n, "reason": reason})
            }
            Error::RodriguesUndefined { reason } => {
                json!({"kind": "rodrigues_undefined", "reason": reason})
            }
            Error::NotASimplePole { at, multiplicity } => {
                json!({"kind": "not_a_simple_pole", "at": at, "multiplicity": multiplicity})
            }
            Error::ClosedFormMismatch {
                context,
                raw,
                closed,
                difference,
            } => json!({
                "kind": "closed_form_mismatch",
                "context": context, "raw": raw, "closed": closed, "difference": difference,
            }),
            Error::SparsityViolation {
                context,
                n,
                l,
                coeff,
                band,
            } => json!({
                "kind": "sparsity_violation",
                "context": context, "n": n, "l": l, "coeff": coeff, "band": band,
            }),
            Error::UnrepresentableTarget {
                context,
                degree,
                remainder,
            } => json!({
                "kind": "unrepresentable_target",
                "context": context, "degree": degree, "remainder": remainder,
            }),
            Error::IdentityViolation {
                context,
                lhs,
                rhs,
                difference,
            } => json!({
                "kind": "identity_violation",
                "context": context, "lhs": lhs, "rhs": rhs, "difference": difference,
            }),
            Error::NonPolynomialResult {
                context,
                denominator,
            } => json!({
                "kind": "non_polynomial_result",
                "context": context, "denominator": denominator,
            }),
            Error::NonConvergence {
                order_cap,
                last_delta_log2,
            } => json!({
                "kind": "non_convergence",
                "order_cap": order_cap, "last_delta_log2": last_delta_log2,
            }),
            Error::Config { reason } => json!({"kind": "config", "reason": reason}),
            Error::Io { reason } => json!({"kind": "io", "reason": reason}),
        }
    }

    /// True for the variants that signal a violated structural invariant
    /// (the "this would falsify the theory" group).
    pub fn is_identity_violation(&self) -> bool {
        matches!(
            self,
            Error::SparsityViolation { .. }
                | Error::UnrepresentableTarget { .. }
                | Error::IdentityViolation { .. }
                | Error::ClosedFormMismatch { .. }
                | Error::NonPolynomialResult { .. }
        )
    }
}
