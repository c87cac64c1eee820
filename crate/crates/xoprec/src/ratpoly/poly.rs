//! Dense univariate polynomials over [`ExactScalar`].
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial is the empty vector. All arithmetic is exact.

use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::bigreal::BigReal;
use super::scalar::{fmt_rat, parse_rat, ExactScalar};
use crate::error::Error;

/// Dense polynomial: `coeffs[k]` multiplies `x^k`; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<ExactScalar>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(ExactScalar::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::monomial(ExactScalar::one(), 1)
    }

    /// The constant polynomial `c`.
    pub fn constant(c: ExactScalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Parses ascending coefficient strings (`"p/q"` form).
    pub fn from_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self, Error> {
        let parsed = coeffs
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(parsed))
    }

    /// Ascending coefficient strings (`"p/q"` form); empty for zero.
    pub fn to_string_vec(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rat).collect()
    }

    /// Ascending coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Constant term (zero for the zero polynomial).
    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(0)
    }

    /// True if the polynomial is a constant (degree ≤ 0).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `(self / leading, leading)`, or `None` for the zero polynomial.
    pub fn monicized(&self) -> Option<(Poly, ExactScalar)> {
        let lc = self.leading()?.clone();
        Some((self.scale(&(ExactScalar::one() / &lc)), lc))
    }

    /// `c · self`.
    pub fn scale(&self, c: &ExactScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `x^k · self`.
    pub fn mul_x_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * ExactScalar::from_integer(k.into()))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Formal antiderivative with integration constant 0.
    pub fn antiderivative(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactScalar::zero());
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a / ExactScalar::from_integer((k + 1).into()));
        }
        Poly::from_coeffs(coeffs)
    }

    /// `p(c·x + d)` by Horner composition.
    ///
    /// Rejects `c = 0` (the result would collapse to a constant and degree
    /// bookkeeping downstream relies on affine maps being invertible).
    pub fn compose_affine(&self, c: &ExactScalar, d: &ExactScalar) -> Result<Poly, Error> {
        if c.is_zero() {
            return Err(Error::InvalidParameter {
                reason: "compose_affine requires a nonzero scale c".into(),
            });
        }
        let inner = Poly::from_coeffs(vec![d.clone(), c.clone()]);
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Poly::constant(a.clone());
        }
        Ok(acc)
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Horner evaluation at a fixed-point real; coefficients are rounded to
    /// the scale of `x`.
    pub fn eval_real(&self, x: &BigReal) -> BigReal {
        let scale = x.scale();
        let mut acc = BigReal::zero(scale);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &BigReal::from_rational(a, scale);
        }
        acc
    }

    /// Sign of the polynomial at +∞ (`1`, `0`, or `−1`).
    pub fn sign_at_pos_inf(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some(lc) => {
                if lc.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Sign of the polynomial at −∞.
    pub fn sign_at_neg_inf(&self) -> i32 {
        let s = self.sign_at_pos_inf();
        if self.coeffs.len() % 2 == 0 {
            // Odd degree: sign flips.
            -s
        } else {
            s
        }
    }

    /// Euclidean division: returns `(q, r)` with `self = q·div + r` and
    /// `deg r < deg div`.
    ///
    /// # Panics
    /// Panics if `div` is the zero polynomial.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        let dlc = div.leading().expect("division by the zero polynomial");
        let ddeg = div.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![ExactScalar::zero(); rem.len() - ddeg];
        for k in (ddeg..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / dlc;
            for (i, d) in div.coeffs.iter().enumerate() {
                let t = &q * d;
                rem[k - ddeg + i] -= t;
            }
            quo[k - ddeg] = q;
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // Monicize each remainder to keep coefficient growth in check.
            let (bm, _) = b.monicized().unwrap();
            let (_, r) = a.divrem(&bm);
            a = bm;
            b = r;
        }
        match a.monicized() {
            Some((m, _)) => m,
            None => Poly::zero(),
        }
    }

    /// Square-free part `self / gcd(self, self′)` (monic).
    pub fn square_free_part(&self) -> Poly {
        if self.is_constant() {
            return if self.is_zero() {
                Poly::zero()
            } else {
                Poly::one()
            };
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.monicized().map(|(m, _)| m).unwrap_or_else(Poly::zero)
    }
}

/// Wronskian `f·g′ − f′·g`.
pub fn wronskian(f: &Poly, g: &Poly) -> Poly {
    &(f * &g.derivative()) - &(&f.derivative() * g)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self
                .coeffs
                .get(k)
                .cloned()
                .unwrap_or_else(ExactScalar::zero);
            if let Some(b) = rhs.coeffs.get(k) {
                c += b;
            }
            coeffs.push(c);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + k] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if unit_coeff { "" } else { " " })?,
                _ => write!(f, "{}x^{}", if unit_coeff { "" } else { " " }, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::scalar::{rat, rat_int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn construction_trims_trailing_zeros() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::monomial(rat_int(0), 5), Poly::zero());
    }

    #[test]
    fn arithmetic_pins() {
        let a = p(&[1, 2]); // 1 + 2x
        let b = p(&[-1, 2]); // −1 + 2x
        assert_eq!(&a + &b, p(&[0, 4]));
        assert_eq!(&a - &b, p(&[2]));
        assert_eq!(&a * &b, p(&[-1, 0, 4]));
        assert_eq!(a.pow(3), p(&[1, 6, 12, 8]));
    }

    #[test]
    fn derivative_and_antiderivative() {
        let q = p(&[5, 0, 3]); // 5 + 3x²
        assert_eq!(q.derivative(), p(&[0, 6]));
        assert_eq!(q.derivative().antiderivative(), p(&[0, 0, 3]));
        assert_eq!(q.antiderivative().coeff(0), rat_int(0));
        assert_eq!(q.antiderivative().derivative(), q);
    }

    #[test]
    fn compose_affine_pins_and_rejects_zero_scale() {
        let q = p(&[0, 0, 1]); // x²
                               // x² ∘ (2x+1) = 4x² + 4x + 1
        assert_eq!(
            q.compose_affine(&rat_int(2), &rat_int(1)).unwrap(),
            p(&[1, 4, 4])
        );
        // Reflection of an odd polynomial.
        let c = p(&[0, -3, 0, 2]);
        assert_eq!(
            c.compose_affine(&rat_int(-1), &rat_int(0)).unwrap(),
            &Poly::zero() - &c
        );
        assert!(q.compose_affine(&rat_int(0), &rat_int(1)).is_err());
    }

    #[test]
    fn eval_horner() {
        let q = p(&[1, -2, 3]);
        assert_eq!(q.eval(&rat(1, 2)), rat(3, 4)); // 1 − 1 + 3/4
        assert_eq!(q.eval(&rat_int(0)), rat_int(1));
    }

    #[test]
    fn divrem_and_gcd() {
        let a = p(&[-1, 0, 1]); // (x−1)(x+1)
        let b = p(&[-1, 1]); // x−1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());

        let f = &a * &b; // (x−1)²(x+1)
        assert_eq!(f.gcd(&a), a);
        assert_eq!(f.square_free_part(), a);
    }

    #[test]
    fn wronskian_of_powers() {
        // W(x², x³) = x²·3x² − 2x·x³ = x⁴
        let w = wronskian(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1]));
        assert_eq!(w, p(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn signs_at_infinity() {
        let q = p(&[4, 0, -1]); // −x² + 4
        assert_eq!(q.sign_at_pos_inf(), -1);
        assert_eq!(q.sign_at_neg_inf(), -1);
        let c = p(&[0, 1]); // x
        assert_eq!(c.sign_at_neg_inf(), -1);
        assert_eq!(Poly::zero().sign_at_pos_inf(), 0);
    }

    #[test]
    fn display_formatting() {
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(
            Poly::from_coeffs(vec![rat(3, 2), rat_int(-1), rat_int(1)]).to_string(),
            "x^2 - x + 3/2"
        );
    }

    #[test]
    fn string_codec_round_trip() {
        let q = Poly::from_coeffs(vec![rat(3, 2), rat_int(0), rat_int(-2)]);
        let strings = q.to_string_vec();
        assert_eq!(strings, vec!["3/2", "0", "-2"]);
        assert_eq!(Poly::from_strings(&strings).unwrap(), q);
        assert!(Poly::from_strings(&["1", "bogus"]).is_err());
    }
}
