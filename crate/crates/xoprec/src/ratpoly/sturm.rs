//! Sturm-chain root counting.
//!
//! Counts *distinct* real roots in a half-open interval `(lo, hi]` whose
//! ends may be ±∞. The chain is built on the square-free part, so
//! multiplicities never inflate the count; signs at infinite bounds come
//! from leading coefficients and degree parity.

use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::scalar::ExactScalar;
use crate::error::Error;

/// Interval end for [`sturm_count`]: finite, or ±∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(ExactScalar),
    PosInf,
}

impl Bound {
    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::Finite(_) => 1,
            Bound::PosInf => 2,
        }
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
///
/// Errors on the zero polynomial (root set is not discrete) and on an
/// inverted interval; an empty interval (`lo == hi`) counts zero roots.
pub fn sturm_count(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize, Error> {
    if p.is_zero() {
        return Err(Error::InvalidParameter {
            reason: "sturm_count on the zero polynomial".into(),
        });
    }
    match (lo, hi) {
        (Bound::Finite(a), Bound::Finite(b)) => {
            if a > b {
                return Err(Error::InvalidParameter {
                    reason: "sturm_count on an inverted interval".into(),
                });
            }
            if a == b {
                return Ok(0);
            }
        }
        _ => {
            if lo.rank() >= hi.rank() {
                if lo == hi {
                    return Ok(0);
                }
                return Err(Error::InvalidParameter {
                    reason: "sturm_count on an inverted interval".into(),
                });
            }
        }
    }
    let sf = p.square_free_part();
    if sf.is_constant() {
        // Nonzero constant: no roots.
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    let v_lo = variations(&chain, lo);
    let v_hi = variations(&chain, hi);
    // With the skip-zeros convention and a square-free head, V(lo) − V(hi)
    // counts roots in (lo, hi]: a root exactly at lo is not counted, a root
    // exactly at hi is.
    Ok(v_lo.saturating_sub(v_hi))
}

/// Canonical Sturm chain `s₀ = p, s₁ = p′, s_{k+1} = −rem(s_{k−1}, s_k)`.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(&Poly::zero() - &r);
    }
    chain
}

/// Sign variations of the chain at a bound, skipping zero entries.
fn variations(chain: &[Poly], at: &Bound) -> usize {
    let mut count = 0usize;
    let mut prev: i32 = 0;
    for s in chain {
        let sign = match at {
            Bound::NegInf => s.sign_at_neg_inf(),
            Bound::PosInf => s.sign_at_pos_inf(),
            Bound::Finite(x) => {
                let v = s.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
        };
        if sign == 0 {
            continue;
        }
        if prev != 0 && sign != prev {
            count += 1;
        }
        prev = sign;
    }
    count
}
