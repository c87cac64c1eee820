//! Fixed-point arbitrary-precision reals.
//!
//! A [`BigReal`] is `mant · 2^{−scale}` with a big-integer mantissa. The
//! scale is set at construction (callers use their target precision plus
//! guard bits) and survives arithmetic: binary operations align to the
//! larger scale and round half away from zero, so every operation is
//! deterministic and accurate to one unit in the last place.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::ExactScalar;

/// Fixed-point real `mant · 2^{−scale}`.
#[derive(Clone)]
pub struct BigReal {
    mant: BigInt,
    scale: u32,
}

impl BigReal {
    pub fn new(mant: BigInt, scale: u32) -> Self {
        BigReal { mant, scale }
    }

    pub fn zero(scale: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn one(scale: u32) -> Self {
        BigReal {
            mant: BigInt::one() << scale,
            scale,
        }
    }

    pub fn from_int(n: i64, scale: u32) -> Self {
        BigReal {
            mant: BigInt::from(n) << scale,
            scale,
        }
    }

    /// Nearest fixed-point value of an exact rational.
    pub fn from_rational(x: &ExactScalar, scale: u32) -> Self {
        let n = x.numer() << scale;
        BigReal {
            mant: div_round(&n, x.denom()),
            scale,
        }
    }

    /// Nearest fixed-point value of an f64 (must be finite).
    ///
    /// # Panics
    /// Panics on NaN or ±∞.
    pub fn from_f64(x: f64, scale: u32) -> Self {
        let r = ExactScalar::from_float(x).expect("finite f64");
        BigReal::from_rational(&r, scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> BigReal {
        BigReal {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    /// Re-expresses the value at a different scale (exact when growing,
    /// rounded when shrinking).
    pub fn rescale(&self, scale: u32) -> BigReal {
        if scale >= self.scale {
            BigReal {
                mant: &self.mant << (scale - self.scale),
                scale,
            }
        } else {
            BigReal {
                mant: round_shift(&self.mant, self.scale - scale),
                scale,
            }
        }
    }

    /// Quotient, rounded at the larger operand scale.
    ///
    /// # Panics
    /// Panics on division by zero.
    pub fn div(&self, rhs: &BigReal) -> BigReal {
        assert!(!rhs.is_zero(), "BigReal division by zero");
        let scale = self.scale.max(rhs.scale);
        let a = self.rescale(scale);
        let b = rhs.rescale(scale);
        let n = a.mant << scale;
        BigReal {
            mant: div_round(&n, &b.mant),
            scale,
        }
    }

    pub fn recip(&self) -> BigReal {
        BigReal::one(self.scale).div(self)
    }

    /// Square root (floor at the working scale, accurate to 1 ulp).
    ///
    /// # Panics
    /// Panics on negative input.
    pub fn sqrt(&self) -> BigReal {
        assert!(!self.is_negative(), "BigReal sqrt of a negative value");
        let shifted: BigInt = &self.mant << self.scale;
        BigReal {
            mant: shifted.sqrt(),
            scale: self.scale,
        }
    }

    /// `|self| < 2^k` (exact test on the mantissa bit length).
    pub fn abs_lt_pow2(&self, k: i64) -> bool {
        if self.mant.is_zero() {
            return true;
        }
        // |mant·2^{−scale}| < 2^k  ⟺  |mant| < 2^{scale+k}  ⟺  bits ≤ scale+k,
        // since bits(m) = b means 2^{b−1} ≤ |m| < 2^b.
        self.mant.abs().bits() as i64 <= self.scale as i64 + k
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn log2_abs(&self) -> Option<i64> {
        if self.mant.is_zero() {
            return None;
        }
        Some(self.mant.abs().bits() as i64 - 1 - self.scale as i64)
    }

    /// Nearest f64 (overflowing to ±∞ for huge values, flushing to 0 for
    /// values far below f64 range).
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.abs().bits();
        if bits <= 60 {
            return self.mant.to_f64().unwrap_or(0.0) * (-(self.scale as f64)).exp2();
        }
        let shift = bits - 53;
        let top = &self.mant >> shift;
        top.to_f64().unwrap_or(f64::NAN) * ((shift as f64) - self.scale as f64).exp2()
    }

    /// Decimal rendering with the given number of fractional digits,
    /// rounded half away from zero.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let ten_pow = BigInt::from(10u32).pow(digits);
        let scaled = div_round(
            &(self.mant.abs() * &ten_pow),
            &(BigInt::one() << self.scale),
        );
        let (int_part, frac_part) = (&scaled / &ten_pow, &scaled % &ten_pow);
        let sign = if self.mant.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }

    fn aligned(&self, rhs: &BigReal) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(rhs.scale);
        let a = if scale == self.scale {
            self.mant.clone()
        } else {
            &self.mant << (scale - self.scale)
        };
        let b = if scale == rhs.scale {
            rhs.mant.clone()
        } else {
            &rhs.mant << (scale - rhs.scale)
        };
        (a, b, scale)
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        let (a, b, scale) = self.aligned(rhs);
        BigReal { mant: a + b, scale }
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        let (a, b, scale) = self.aligned(rhs);
        BigReal { mant: a - b, scale }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            scale: self.scale,
        }
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        let scale = self.scale.max(rhs.scale);
        let prod = &self.mant * &rhs.mant;
        // The raw product carries scale self.scale + rhs.scale; shift back.
        BigReal {
            mant: round_shift(&prod, self.scale + rhs.scale - scale),
            scale,
        }
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.aligned(other);
        a == b
    }
}
impl Eq for BigReal {}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(24))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BigReal({} @2^-{})",
            self.to_decimal_string(24),
            self.scale
        )
    }
}

/// `round(n / d)`, half away from zero; `d` must be nonzero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (na, da) = (n.abs(), d.abs());
    let q = (na * 2u32 + &da) / (&da * 2u32);
    if n.is_negative() != d.is_negative() && !q.is_zero() {
        -q
    } else {
        q
    }
}

/// `round(m / 2^k)`, half away from zero.
fn round_shift(m: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (k - 1);
    if m.is_negative() {
        -((-m + half) >> k)
    } else {
        (m + half) >> k
    }
}

/// π at the given scale (Machin's formula, integer spigot).
pub fn pi(scale: u32) -> BigReal {
    let guard = scale + 32;
    let a = atan_inv_spigot(5, guard);
    let b = atan_inv_spigot(239, guard);
    let m = (a * 16u32) - (b * 4u32);
    BigReal {
        mant: m,
        scale: guard,
    }
    .rescale(scale)
}

/// √π at the given scale.
pub fn sqrt_pi(scale: u32) -> BigReal {
    pi(scale + 32).sqrt().rescale(scale)
}

/// `atan(1/q) · 2^{scale}` by the alternating power series, floor-truncated
/// per term (callers supply guard bits to absorb the ulp drift).
fn atan_inv_spigot(q: u64, scale: u32) -> BigInt {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut power = (BigInt::one() << scale) / BigInt::from(q); // 2^scale / q^{2k+1}
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power /= &q2;
        k += 1;
    }
    sum
}
