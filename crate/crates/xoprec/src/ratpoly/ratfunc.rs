//! Reduced rational functions.
//!
//! [`RatFunc`] keeps `num/den` with `gcd(num, den) = 1` and a monic
//! denominator (the leading coefficient is folded into the numerator), so
//! equality is plain structural equality and degree bookkeeping is exact.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::{fmt_rat, ExactScalar};
use crate::error::Error;

/// Rational function in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den`, reducing by the gcd and monicizing the denominator.
    /// Rejects a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::InvalidParameter {
                reason: "rational function with zero denominator".into(),
            });
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(&g);
        debug_assert!(r2.is_zero());
        let (den, lc) = den.monicized().expect("nonzero denominator");
        let num = num.scale(&(ExactScalar::one() / lc));
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: ExactScalar) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one_poly() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Derivative `(n′d − nd′)/d²`, reduced.
    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFunc::new(num, den).expect("denominator square is nonzero")
    }

    /// Evaluation; `None` on a zero of the denominator.
    pub fn eval(&self, x: &ExactScalar) -> Option<ExactScalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

/// Helper used by `as_poly` (kept on `Poly` to avoid exposing internals).
trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}
impl IsOnePoly for Poly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.leading().is_some_and(One::is_one)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// # Panics
    /// Panics on division by the zero rational function.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Outcome of a residue query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residue {
    /// The point is a simple pole with this residue.
    AtSimplePole(ExactScalar),
    /// The point is not a pole at all; the residue is zero, flagged so the
    /// caller can distinguish "zero residue" from "not a pole".
    NotAPole,
}

impl Residue {
    /// The residue value (zero for `NotAPole`).
    pub fn value(&self) -> ExactScalar {
        match self {
            Residue::AtSimplePole(v) => v.clone(),
            Residue::NotAPole => ExactScalar::zero(),
        }
    }
}

/// Residue of `f` at `x = at`.
///
/// For a simple pole this is `num(at) / den′(at)`. A higher-multiplicity
/// pole (detected via `gcd(den, den′)`) is an error; a regular point is
/// flagged as [`Residue::NotAPole`].
pub fn residue_simple(f: &RatFunc, at: &ExactScalar) -> Result<Residue, Error> {
    if !f.den().eval(at).is_zero() {
        return Ok(Residue::NotAPole);
    }
    let dprime = f.den().derivative();
    let shared = f.den().gcd(&dprime);
    if shared.eval(at).is_zero() {
        // Count the multiplicity for the diagnostic.
        let linear = Poly::from_coeffs(vec![-at.clone(), ExactScalar::one()]);
        let mut m = 0usize;
        let mut rest = f.den().clone();
        loop {
            let (q, r) = rest.divrem(&linear);
            if !r.is_zero() {
                break;
            }
            m += 1;
            rest = q;
        }
        return Err(Error::NotASimplePole {
            at: fmt_rat(at),
            multiplicity: m,
        });
    }
    let value = f.num().eval(at) / dprime.eval(at);
    Ok(Residue::AtSimplePole(value))
}

/// `lim_{x→∞} f(x)` when finite: 0 if `deg num < deg den`, the ratio of
/// leading coefficients if the degrees match, `None` otherwise.
pub fn limit_at_infinity(f: &RatFunc) -> Option<ExactScalar> {
    if f.is_zero() {
        return Some(ExactScalar::zero());
    }
    let nd = f.num().degree().unwrap();
    let dd = f.den().degree().unwrap();
    match nd.cmp(&dd) {
        std::cmp::Ordering::Less => Some(ExactScalar::zero()),
        std::cmp::Ordering::Equal => Some(f.num().leading().unwrap() / f.den().leading().unwrap()),
        std::cmp::Ordering::Greater => None,
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
    fn new_reduces_and_monicizes() {
        // (2x² − 2) / (4x − 4) = (x+1)/2
        let f = RatFunc::new(p(&[-2, 0, 2]), p(&[-4, 4])).unwrap();
        assert_eq!(f.num(), &Poly::from_coeffs(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(f.den(), &Poly::one());
        assert!(RatFunc::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn arithmetic_and_derivative() {
        // 1/x + 1/(x+1) = (2x+1)/(x²+x)
        let a = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        let b = RatFunc::new(p(&[1]), p(&[1, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(s.num(), &p(&[1, 2]));
        assert_eq!(s.den(), &p(&[0, 1, 1]));

        // (1/x)′ = −1/x²
        let d = a.derivative();
        assert_eq!(d.num(), &p(&[-1]));
        assert_eq!(d.den(), &p(&[0, 0, 1]));

        // a · x = 1
        let x = RatFunc::from_poly(p(&[0, 1]));
        assert_eq!(&a * &x, RatFunc::one());
        assert_eq!(&(&a / &a) - &RatFunc::one(), RatFunc::zero());
    }

    #[test]
    fn eval_and_poles() {
        let f = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(f.eval(&rat_int(2)), Some(rat(1, 2)));
        assert_eq!(f.eval(&rat_int(0)), None);
    }

    #[test]
    fn residue_at_simple_pole() {
        // f = (3x+1)/(x(x−1)): residue at 0 is −1, at 1 is 4.
        let f = RatFunc::new(p(&[1, 3]), p(&[0, -1, 1])).unwrap();
        assert_eq!(
            residue_simple(&f, &rat_int(0)).unwrap(),
            Residue::AtSimplePole(rat_int(-1))
        );
        assert_eq!(
            residue_simple(&f, &rat_int(1)).unwrap(),
            Residue::AtSimplePole(rat_int(4))
        );
        assert_eq!(residue_simple(&f, &rat_int(5)).unwrap(), Residue::NotAPole);
        assert_eq!(residue_simple(&f, &rat_int(5)).unwrap().value(), rat_int(0));
    }

    #[test]
    fn residue_rejects_multiple_pole() {
        // 1/x²: double pole at 0.
        let f = RatFunc::new(p(&[1]), p(&[0, 0, 1])).unwrap();
        match residue_simple(&f, &rat_int(0)) {
            Err(Error::NotASimplePole { multiplicity, .. }) => assert_eq!(multiplicity, 2),
            other => panic!("expected NotASimplePole, got {other:?}"),
        }
    }

    #[test]
    fn limits_at_infinity() {
        let f = RatFunc::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(limit_at_infinity(&f), Some(rat_int(0)));
        let g = RatFunc::new(p(&[1, -2]), p(&[5, 4])).unwrap();
        assert_eq!(limit_at_infinity(&g), Some(rat(-1, 2)));
        let h = RatFunc::from_poly(p(&[0, 1]));
        assert_eq!(limit_at_infinity(&h), None);
        assert_eq!(limit_at_infinity(&RatFunc::zero()), Some(rat_int(0)));
    }
}
