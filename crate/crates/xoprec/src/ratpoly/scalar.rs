//! Exact rational scalars.
//!
//! [`ExactScalar`] is `num_rational::BigRational`, which already maintains
//! the required canonical form (lowest terms, positive denominator). This
//! module adds the string codec used by every serialized interface — `"p/q"`,
//! or just `"p"` when the denominator is 1 — and small constructors shared
//! across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::Error;

/// Arbitrary-precision rational scalar in canonical form.
pub type ExactScalar = BigRational;

/// The integer `n` as a scalar.
pub fn rat_int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `p/q` as a scalar.
///
/// # Panics
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"` (optionally signed, arbitrary size) into a scalar.
///
/// Whitespace around the string or around `/` is accepted. A zero
/// denominator or anything else unparsable is an `InvalidParameter` error.
pub fn parse_rat(s: &str) -> Result<ExactScalar, Error> {
    let body = s.trim();
    let err = || Error::InvalidParameter {
        reason: format!("cannot parse {body:?} as a rational (expected \"p\" or \"p/q\")"),
    };
    match body.split_once('/') {
        None => {
            let p = BigInt::from_str(body).map_err(|_| err())?;
            Ok(BigRational::from_integer(p))
        }
        Some((ps, qs)) => {
            let p = BigInt::from_str(ps.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(qs.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(Error::InvalidParameter {
                    reason: format!("zero denominator in {body:?}"),
                });
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Formats a scalar as `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rat(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rising factorial `(x)_k = x (x+1) ⋯ (x+k−1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &ExactScalar, k: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += ExactScalar::one();
    }
    acc
}

/// Nearest-f64 value of a scalar, robust to numerators/denominators that
/// each overflow f64 on their own.
pub fn to_f64(x: &ExactScalar) -> f64 {
    // Shift numerator and denominator down by a common amount only when one
    // of them would overflow f64 on its own; the common shift cancels in the
    // quotient and the surviving ≥900 bits dwarf f64's 53-bit mantissa.
    let num_bits = x.numer().abs().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let excess = (num_bits.max(den_bits) - 900).max(0) as u64;
    let n = x.numer() >> excess;
    let d = x.denom() >> excess;
    if num_traits::Zero::is_zero(&d) {
        // Denominator dwarfs the window, so the value underflows f64.
        return 0.0;
    }
    bigint_to_f64(&n) / bigint_to_f64(&d)
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}
