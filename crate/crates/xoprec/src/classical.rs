//! Classical monic orthogonal families and their gauge data.
//!
//! Monic Hermite, Laguerre(a) and Jacobi(a,b) polynomials are built by the
//! three-term recurrence when every coefficient is finite, with an exact
//! Rodrigues (telescoped-derivative) fallback for parameter values where a
//! recurrence denominator vanishes. On top of the plain families this module
//! carries the gauge layer used by the exceptional constructions: the
//! log-derivatives η of the admissible weight gauges (assembled from the
//! residues of the weight's own log-derivative), the gauged first-order
//! coefficients B̃ = B + 2Aη, the gauge constants c = A(η′+η²) + Bη, the
//! (possibly reflected) seed polynomials and their eigenvalues under the
//! gauged operator A∂² + B̃∂.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::ratpoly::{
    fmt_rat, parse_rat, pochhammer, rat, rat_int, residue_simple, Bound, ExactScalar, Poly, RatFunc,
};

/// Family name without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Hermite,
    Laguerre,
    Jacobi,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Jacobi => "jacobi",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "hermite" => Ok(FamilyKind::Hermite),
            "laguerre" => Ok(FamilyKind::Laguerre),
            "jacobi" => Ok(FamilyKind::Jacobi),
            other => Err(Error::InvalidParameter {
                reason: format!("unknown family '{other}' (expected hermite, laguerre or jacobi)"),
            }),
        }
    }
}

/// Gauge type of an exceptional family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XType {
    I,
    II,
    III,
}

impl XType {
    pub const ALL: [XType; 3] = [XType::I, XType::II, XType::III];
}

impl fmt::Display for XType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XType::I => "I",
            XType::II => "II",
            XType::III => "III",
        })
    }
}

impl FromStr for XType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(XType::I),
            "II" | "2" => Ok(XType::II),
            "III" | "3" => Ok(XType::III),
            other => Err(Error::InvalidParameter {
                reason: format!("unknown type '{other}' (expected I/II/III or 1/2/3)"),
            }),
        }
    }
}

/// A classical family with its parameters: Hermite (weight `e^{−x²}` on ℝ),
/// Laguerre(a) (weight `x^a e^{−x}` on (0,∞)), Jacobi(a,b) (weight
/// `(1−x)^a (1+x)^b` on (−1,1)).
///
/// Parameters are unrestricted here — gauge (seed) families use negative
/// values on purpose; integrability constraints are enforced where a weight
/// is actually integrated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Hermite,
    Laguerre { a: ExactScalar },
    Jacobi { a: ExactScalar, b: ExactScalar },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Hermite => write!(f, "hermite"),
            FamilySpec::Laguerre { a } => write!(f, "laguerre(a={})", fmt_rat(a)),
            FamilySpec::Jacobi { a, b } => {
                write!(f, "jacobi(a={}, b={})", fmt_rat(a), fmt_rat(b))
            }
        }
    }
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Hermite => FamilyKind::Hermite,
            FamilySpec::Laguerre { .. } => FamilyKind::Laguerre,
            FamilySpec::Jacobi { .. } => FamilyKind::Jacobi,
        }
    }

    /// Builds a family from string-typed inputs (a CLI or binding surface),
    /// enforcing that exactly the parameters the family takes are supplied.
    pub fn from_strings(
        family: &str,
        a: Option<&str>,
        b: Option<&str>,
    ) -> Result<FamilySpec, Error> {
        let kind: FamilyKind = family.parse()?;
        let missing = |name: &str| Error::Config {
            reason: format!("parameter {name} is required for the {kind} family"),
        };
        match kind {
            FamilyKind::Hermite => {
                if a.is_some() || b.is_some() {
                    return Err(Error::Config {
                        reason: "the Hermite family takes no parameters".into(),
                    });
                }
                Ok(FamilySpec::Hermite)
            }
            FamilyKind::Laguerre => {
                if b.is_some() {
                    return Err(Error::Config {
                        reason: "the Laguerre family has no parameter b".into(),
                    });
                }
                Ok(FamilySpec::Laguerre {
                    a: parse_rat(a.ok_or_else(|| missing("a"))?)?,
                })
            }
            FamilyKind::Jacobi => Ok(FamilySpec::Jacobi {
                a: parse_rat(a.ok_or_else(|| missing("a"))?)?,
                b: parse_rat(b.ok_or_else(|| missing("b"))?)?,
            }),
        }
    }

    /// Parameter list as `(name, exact value)` pairs, e.g. `[("a", "3")]`.
    pub fn param_pairs(&self) -> Vec<(&'static str, String)> {
        match self {
            FamilySpec::Hermite => vec![],
            FamilySpec::Laguerre { a } => vec![("a", fmt_rat(a))],
            FamilySpec::Jacobi { a, b } => vec![("a", fmt_rat(a)), ("b", fmt_rat(b))],
        }
    }

    /// Parameters rendered for error messages, e.g. `a=1/2, b=1/2`.
    pub fn params_string(&self) -> String {
        let pairs = self.param_pairs();
        if pairs.is_empty() {
            "-".to_string()
        } else {
            pairs
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", ")
        }
    }

    /// Second-order coefficient A of the Bochner operator A∂² + B∂.
    pub fn coeff_a(&self) -> Poly {
        match self {
            FamilySpec::Hermite => Poly::one(),
            FamilySpec::Laguerre { .. } => Poly::x(),
            FamilySpec::Jacobi { .. } => {
                Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-1)])
            }
        }
    }

    /// First-order coefficient B of the Bochner operator A∂² + B∂.
    pub fn coeff_b(&self) -> Poly {
        match self {
            FamilySpec::Hermite => Poly::from_coeffs(vec![rat_int(0), rat_int(-2)]),
            FamilySpec::Laguerre { a } => Poly::from_coeffs(vec![a + rat_int(1), rat_int(-1)]),
            FamilySpec::Jacobi { a, b } => Poly::from_coeffs(vec![b - a, -(a + b + rat_int(2))]),
        }
    }

    /// Eigenvalue λ_n of the degree-n member: A p″ + B p′ = λ_n p.
    pub fn eigenvalue(&self, n: usize) -> ExactScalar {
        let nn = rat_int(n as i64);
        match self {
            FamilySpec::Hermite => rat_int(-2) * &nn,
            FamilySpec::Laguerre { .. } => -nn,
            FamilySpec::Jacobi { a, b } => -(&nn * &(&nn + a + b + rat_int(1))),
        }
    }

    /// Diagonal coefficient A_n of the monic three-term recurrence
    /// `x p_n = p_{n+1} + A_n p_n + B_n p_{n−1}`.
    ///
    /// Jacobi uses the reduced (cancellation-free) form at n = 0; a vanishing
    /// denominator elsewhere is reported as [`Error::RecurrenceUndefined`].
    pub fn offset(&self, n: usize) -> Result<ExactScalar, Error> {
        let nn = rat_int(n as i64);
        match self {
            FamilySpec::Hermite => Ok(ExactScalar::zero()),
            FamilySpec::Laguerre { a } => Ok(rat_int(2) * &nn + a + rat_int(1)),
            FamilySpec::Jacobi { a, b } => {
                if n == 0 {
                    let den = a + b + rat_int(2);
                    checked_div(b - a, den, 0, "offset a+b+2")
                } else {
                    let s = rat_int(2) * &nn + a + b;
                    let den = &s * &(&s + rat_int(2));
                    checked_div(b * b - a * a, den, n as u64, "offset (2n+a+b)(2n+a+b+2)")
                }
            }
        }
    }

    /// Off-diagonal coefficient B_n (n ≥ 1) of the monic three-term
    /// recurrence. Jacobi uses the reduced form at n = 1.
    pub fn coupling(&self, n: usize) -> Result<ExactScalar, Error> {
        assert!(n >= 1, "coupling index starts at 1");
        let nn = rat_int(n as i64);
        match self {
            FamilySpec::Hermite => Ok(&nn / rat_int(2)),
            FamilySpec::Laguerre { a } => Ok(&nn * &(&nn + a)),
            FamilySpec::Jacobi { a, b } => {
                if n == 1 {
                    let two = &(a + b) + rat_int(2);
                    let den = &(&two * &two) * &(&(a + b) + rat_int(3));
                    let num = rat_int(4) * &(a + rat_int(1)) * (b + rat_int(1));
                    checked_div(num, den, 1, "coupling (2+a+b)²(3+a+b)")
                } else {
                    let s = rat_int(2) * &nn + a + b;
                    let den = &(&s * &s) * &(&(&s + rat_int(1)) * &(&s - rat_int(1)));
                    let num = rat_int(4) * &nn * (&nn + a) * (&nn + b) * (&nn + a + b);
                    checked_div(num, den, n as u64, "coupling (2n+a+b)²(2n+a+b±1)")
                }
            }
        }
    }

    /// Monic degree-n member by the three-term recurrence.
    pub fn monic_by_recurrence(&self, n: usize) -> Result<Poly, Error> {
        let mut prev = Poly::one();
        if n == 0 {
            return Ok(prev);
        }
        let mut cur = &Poly::x() - &Poly::constant(self.offset(0)?);
        for k in 1..n {
            let shift = &Poly::x() - &Poly::constant(self.offset(k)?);
            let next = &(&shift * &cur) - &prev.scale(&self.coupling(k)?);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Monic degree-n member by the Rodrigues formula, telescoped so every
    /// intermediate is a polynomial with exact rational coefficients.
    pub fn monic_by_rodrigues(&self, n: usize) -> Result<Poly, Error> {
        match self {
            FamilySpec::Hermite => {
                // dᵏ/dxᵏ e^{−x²} = e^{−x²} Q_k,  Q_{k+1} = Q′_k − 2x Q_k.
                let minus_two_x = Poly::from_coeffs(vec![rat_int(0), rat_int(-2)]);
                let mut q = Poly::one();
                for _ in 0..n {
                    q = &q.derivative() + &(&minus_two_x * &q);
                }
                // leading(Q_n) = (−2)^n.
                let mut norm = ExactScalar::one();
                for _ in 0..n {
                    norm = norm * rat(-1, 2);
                }
                Ok(q.scale(&norm))
            }
            FamilySpec::Laguerre { a } => {
                // dᵏ/dxᵏ (e^{−x} x^{n+a}) = e^{−x} x^{n+a−k} Q_k,
                // Q_{k+1} = (n+a−k) Q_k + x (Q′_k − Q_k).
                let mut q = Poly::one();
                for k in 0..n {
                    let c = &(rat_int(n as i64) + a) - &rat_int(k as i64);
                    let xq = (&q.derivative() - &q).mul_x_pow(1);
                    q = &q.scale(&c) + &xq;
                }
                // leading(Q_n) = (−1)^n.
                Ok(q.scale(&rat_int(if n % 2 == 0 { 1 } else { -1 })))
            }
            FamilySpec::Jacobi { a, b } => {
                // dᵏ/dxᵏ [(1−x)^{n+a}(1+x)^{n+b}] = (1−x)^{n+a−k}(1+x)^{n+b−k} Q_k,
                // Q_{k+1} = [(q−p) − (p+q)x] Q_k + (1−x²) Q′_k,
                // p = n+a−k, q = n+b−k; leading(Q_n) = (−1)^n (n+a+b+1)_n.
                let norm = pochhammer(&(&(rat_int(n as i64) + a) + &(b + rat_int(1))), n as u32);
                if norm.is_zero() {
                    return Err(Error::RodriguesUndefined {
                        reason: format!("(n+a+b+1)_n vanishes for {} at n = {n}", self),
                    });
                }
                let one_minus_x2 = self.coeff_a();
                let mut q = Poly::one();
                for k in 0..n {
                    let p_exp = &(rat_int(n as i64) + a) - &rat_int(k as i64);
                    let q_exp = &(rat_int(n as i64) + b) - &rat_int(k as i64);
                    let lin = Poly::from_coeffs(vec![&q_exp - &p_exp, -(&p_exp + &q_exp)]);
                    q = &(&lin * &q) + &(&one_minus_x2 * &q.derivative());
                }
                let sign = rat_int(if n % 2 == 0 { 1 } else { -1 });
                Ok(q.scale(&(sign / norm)))
            }
        }
    }

    /// Monic degree-n member: three-term recurrence, falling back to the
    /// Rodrigues route when a recurrence denominator vanishes.
    pub fn monic(&self, n: usize) -> Result<Poly, Error> {
        match self.monic_by_recurrence(n) {
            Ok(p) => Ok(p),
            Err(Error::RecurrenceUndefined { .. }) => self.monic_by_rodrigues(n),
            Err(e) => Err(e),
        }
    }

    /// Squared-norm ratio ĥ_n / ĥ_0 = ∏_{k=1}^{n} B_k of the monic family.
    pub fn norm_ratio(&self, n: usize) -> Result<ExactScalar, Error> {
        let mut acc = ExactScalar::one();
        for k in 1..=n {
            acc = &acc * &self.coupling(k)?;
        }
        Ok(acc)
    }

    /// Logarithmic derivative w′/w = (B − A′)/A of the weight (Pearson).
    pub fn weight_log_derivative(&self) -> RatFunc {
        let num = &self.coeff_b() - &self.coeff_a().derivative();
        RatFunc::new(num, self.coeff_a()).expect("A is nonzero")
    }

    /// Open interval supporting the weight.
    pub fn domain(&self) -> (Bound, Bound) {
        match self {
            FamilySpec::Hermite => (Bound::NegInf, Bound::PosInf),
            FamilySpec::Laguerre { .. } => (Bound::Finite(rat_int(0)), Bound::PosInf),
            FamilySpec::Jacobi { .. } => (Bound::Finite(rat_int(-1)), Bound::Finite(rat_int(1))),
        }
    }
}

fn checked_div(
    num: ExactScalar,
    den: ExactScalar,
    n: u64,
    what: &str,
) -> Result<ExactScalar, Error> {
    if den.is_zero() {
        Err(Error::RecurrenceUndefined {
            n,
            reason: format!("{what} vanishes"),
        })
    } else {
        Ok(num / den)
    }
}

/// Monic twisted Hermite polynomial h_n: the Hermite recurrence with the
/// sign of the coupling flipped, `h_{n+1} = x h_n + (n/2) h_{n−1}`. These are
/// the degree-n polynomial eigenfunctions of ∂² + 2x∂ (eigenvalue 2n) and
/// serve as the Hermite type-III seeds.
pub fn twisted_hermite(n: usize) -> Poly {
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::x();
    for k in 1..n {
        let next = &(&Poly::x() * &cur) + &prev.scale(&rat(k as i64, 2));
        prev = cur;
        cur = next;
    }
    cur
}

/// Gauge log-derivative η for (family, type).
///
/// The weight's own log-derivative w′/w = (B−A′)/A splits into components at
/// the finite singular points of the weight plus an entire part; a gauge
/// flips the sign of one or more components. Type III flips all of them
/// (η = −w′/w). For Laguerre, type I flips the entire part and type II the
/// component at 0; for Jacobi, type I flips the component at −1 and type II
/// the component at +1. Hermite, whose weight has no finite singular point,
/// admits only the full flip.
pub fn eta_gamma(fam: &FamilySpec, t: XType) -> Result<RatFunc, Error> {
    let f = fam.weight_log_derivative();
    match (fam, t) {
        (FamilySpec::Hermite, XType::III) => Ok(-&f),
        (FamilySpec::Hermite, other) => Err(Error::NonexistentCombination {
            family: "hermite".into(),
            xtype: other.to_string(),
            j: 0,
            reason: "the Hermite weight has no finite singular point; only the full \
                     flip (type III) exists"
                .into(),
        }),
        (FamilySpec::Laguerre { .. }, t) => {
            let zero = rat_int(0);
            let res0 = residue_simple(&f, &zero)?.value();
            let pole_part = RatFunc::new(Poly::constant(res0.clone()), Poly::x())?;
            match t {
                XType::I => {
                    let entire = &f - &pole_part;
                    let p =
                        entire
                            .as_poly()
                            .cloned()
                            .ok_or_else(|| Error::NonPolynomialResult {
                                context: "entire part of the Laguerre weight log-derivative".into(),
                                denominator: entire.den().to_string(),
                            })?;
                    Ok(RatFunc::from_poly(-&p))
                }
                XType::II => Ok(-&pole_part),
                XType::III => Ok(-&f),
            }
        }
        (FamilySpec::Jacobi { .. }, t) => match t {
            XType::I => {
                let at = rat_int(-1);
                let res = residue_simple(&f, &at)?.value();
                // component res/(x+1), flipped
                Ok(RatFunc::new(
                    Poly::constant(-res),
                    Poly::from_coeffs(vec![rat_int(1), rat_int(1)]),
                )?)
            }
            XType::II => {
                let at = rat_int(1);
                let res = residue_simple(&f, &at)?.value();
                // component res/(x−1), flipped
                Ok(RatFunc::new(
                    Poly::constant(-res),
                    Poly::from_coeffs(vec![rat_int(-1), rat_int(1)]),
                )?)
            }
            XType::III => Ok(-&f),
        },
    }
}

/// Gauged first-order coefficient B̃ = B + 2Aη (always a polynomial of
/// degree ≤ 1 for an admissible gauge).
pub fn gauged_b(fam: &FamilySpec, t: XType) -> Result<Poly, Error> {
    let eta = eta_gamma(fam, t)?;
    let b = RatFunc::from_poly(fam.coeff_b());
    let two_a = RatFunc::from_poly(fam.coeff_a().scale(&rat_int(2)));
    let sum = &b + &(&two_a * &eta);
    let p = sum
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::NonPolynomialResult {
            context: format!("gauged coefficient B + 2Aη for {fam} type {t}"),
            denominator: sum.den().to_string(),
        })?;
    if p.degree().unwrap_or(0) > 1 {
        return Err(Error::IdentityViolation {
            context: format!("deg(B + 2Aη) ≤ 1 for {fam} type {t}"),
            lhs: p.to_string(),
            rhs: "a polynomial of degree ≤ 1".into(),
            difference: p.to_string(),
        });
    }
    Ok(p)
}

/// Gauge constant c = A(η′ + η²) + Bη (always an exact scalar for an
/// admissible gauge). The full eigenvalue of the gauge factor ξ·q under
/// A∂² + B∂ is the gauged eigenvalue of q plus this constant.
pub fn gauge_constant(fam: &FamilySpec, t: XType) -> Result<ExactScalar, Error> {
    let eta = eta_gamma(fam, t)?;
    let a = RatFunc::from_poly(fam.coeff_a());
    let b = RatFunc::from_poly(fam.coeff_b());
    let val = &(&a * &(&eta.derivative() + &(&eta * &eta))) + &(&b * &eta);
    match val.as_poly() {
        Some(p) if p.is_constant() => Ok(p.constant_term()),
        _ => Err(Error::IdentityViolation {
            context: format!("A(η′+η²) + Bη constant for {fam} type {t}"),
            lhs: val.to_string(),
            rhs: "a constant".into(),
            difference: val.to_string(),
        }),
    }
}

/// The classical family whose members (possibly reflected through x → −x)
/// serve as seeds for (family, type), or `None` for the twisted Hermite
/// seeds which lie outside the classical scheme.
pub fn seed_source(fam: &FamilySpec, t: XType) -> Result<Option<(FamilySpec, bool)>, Error> {
    match (fam, t) {
        (FamilySpec::Hermite, XType::III) => Ok(None),
        (FamilySpec::Hermite, other) => Err(Error::NonexistentCombination {
            family: "hermite".into(),
            xtype: other.to_string(),
            j: 0,
            reason: "only type III exists for Hermite".into(),
        }),
        (FamilySpec::Laguerre { a }, XType::I) => {
            Ok(Some((FamilySpec::Laguerre { a: a.clone() }, true)))
        }
        (FamilySpec::Laguerre { a }, XType::II) => {
            Ok(Some((FamilySpec::Laguerre { a: -a }, false)))
        }
        (FamilySpec::Laguerre { a }, XType::III) => {
            Ok(Some((FamilySpec::Laguerre { a: -a }, true)))
        }
        (FamilySpec::Jacobi { a, b }, XType::I) => Ok(Some((
            FamilySpec::Jacobi {
                a: a.clone(),
                b: -b,
            },
            false,
        ))),
        (FamilySpec::Jacobi { a, b }, XType::II) => Ok(Some((
            FamilySpec::Jacobi {
                a: -a,
                b: b.clone(),
            },
            false,
        ))),
        (FamilySpec::Jacobi { a, b }, XType::III) => {
            Ok(Some((FamilySpec::Jacobi { a: -a, b: -b }, false)))
        }
    }
}

/// Seed polynomial in its construction-formula normalization: the monic
/// member of the seed family, reflected through x → −x where the gauge calls
/// for it (so reflected Laguerre seeds carry leading coefficient (−1)^j).
pub fn seed_polynomial_literal(fam: &FamilySpec, t: XType, j: usize) -> Result<Poly, Error> {
    match seed_source(fam, t)? {
        None => Ok(twisted_hermite(j)),
        Some((src, reflect)) => {
            let p = src.monic(j)?;
            if reflect {
                p.compose_affine(&rat_int(-1), &rat_int(0))
            } else {
                Ok(p)
            }
        }
    }
}

/// Monic seed polynomial.
pub fn seed_polynomial(fam: &FamilySpec, t: XType, j: usize) -> Result<Poly, Error> {
    let p = seed_polynomial_literal(fam, t, j)?;
    Ok(p.monicized().expect("seed is nonzero").0)
}

/// Eigenvalue λ̃_j of the seed under the gauged operator:
/// A q″ + B̃ q′ = λ̃_j q.
pub fn seed_eigenvalue_gauged(fam: &FamilySpec, t: XType, j: usize) -> Result<ExactScalar, Error> {
    let jj = rat_int(j as i64);
    match (fam, t) {
        (FamilySpec::Hermite, XType::III) => Ok(rat_int(2) * &jj),
        (FamilySpec::Hermite, other) => Err(Error::NonexistentCombination {
            family: "hermite".into(),
            xtype: other.to_string(),
            j: j as u32,
            reason: "only type III exists for Hermite".into(),
        }),
        (FamilySpec::Laguerre { .. }, XType::I) => Ok(jj),
        (FamilySpec::Laguerre { .. }, XType::II) => Ok(-jj),
        (FamilySpec::Laguerre { .. }, XType::III) => Ok(jj),
        (FamilySpec::Jacobi { a, b }, XType::I) => Ok(-(&jj * &(&(&jj + a) - &(b - rat_int(1))))),
        (FamilySpec::Jacobi { a, b }, XType::II) => Ok(-(&jj * &(&(&jj + b) - &(a - rat_int(1))))),
        (FamilySpec::Jacobi { a, b }, XType::III) => Ok(&jj * &(&(a + b) - &(&jj + rat_int(1)))),
    }
}

/// Full eigenvalue λ_ρ = λ̃_j + c of the quasi-polynomial seed factor under
/// the original operator A∂² + B∂.
pub fn seed_eigenvalue_full(fam: &FamilySpec, t: XType, j: usize) -> Result<ExactScalar, Error> {
    Ok(seed_eigenvalue_gauged(fam, t, j)? + gauge_constant(fam, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::parse_rat;

    fn laguerre(a: ExactScalar) -> FamilySpec {
        FamilySpec::Laguerre { a }
    }
    fn jacobi(a: ExactScalar, b: ExactScalar) -> FamilySpec {
        FamilySpec::Jacobi { a, b }
    }

    fn sample_families() -> Vec<FamilySpec> {
        vec![
            FamilySpec::Hermite,
            laguerre(rat_int(0)),
            laguerre(rat(1, 2)),
            laguerre(rat_int(3)),
            laguerre(rat(-5, 2)),
            jacobi(rat(1, 2), rat(1, 2)),
            jacobi(rat_int(3), rat_int(1)),
            jacobi(rat(-5, 2), rat(7, 3)),
        ]
    }

    #[test]
    fn recurrence_agrees_with_rodrigues() {
        for fam in sample_families() {
            for n in 0..=8 {
                let r = fam.monic_by_recurrence(n).unwrap();
                let d = fam.monic_by_rodrigues(n).unwrap();
                assert_eq!(r, d, "{fam} at n = {n}");
                assert!(n == 0 || r.is_monic());
            }
        }
    }

    #[test]
    fn bochner_eigen_equation_holds() {
        for fam in sample_families() {
            let a = fam.coeff_a();
            let b = fam.coeff_b();
            for n in 0..=10 {
                let p = fam.monic(n).unwrap();
                let lhs = &(&a * &p.derivative().derivative()) + &(&b * &p.derivative());
                let rhs = p.scale(&fam.eigenvalue(n));
                assert_eq!(lhs, rhs, "{fam} at n = {n}");
            }
        }
    }

    #[test]
    fn monic_laguerre_degree_two_pin() {
        // x² − (2a+4)x + (a+1)(a+2) at a = 3.
        let p = laguerre(rat_int(3)).monic(2).unwrap();
        assert_eq!(p, Poly::from_strings(&["20", "-10", "1"]).unwrap());
    }

    #[test]
    fn jacobi_with_vanishing_recurrence_uses_rodrigues() {
        // a = b = −1: the degree-1 coefficient is genuinely undefined…
        let fam = jacobi(rat_int(-1), rat_int(-1));
        assert!(matches!(
            fam.monic(1),
            Err(Error::RodriguesUndefined { .. })
        ));
        // …but degree 2 exists and equals x² − 1.
        let p = fam.monic(2).unwrap();
        assert_eq!(p, Poly::from_strings(&["-1", "0", "1"]).unwrap());

        // Symmetric shifted family: x² + 2ax + 2a² − 1 for (a−1, −a−1).
        let a = rat(7, 3);
        let fam = jacobi(&a - &rat_int(1), -(&a + &rat_int(1)));
        let p = fam.monic(2).unwrap();
        let expected = Poly::from_coeffs(vec![
            rat_int(2) * &a * &a - rat_int(1),
            rat_int(2) * &a,
            rat_int(1),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn norm_ratio_matches_product() {
        // Hermite: ĥ_3/ĥ_0 = (1/2)(1)(3/2) = 3/4.
        assert_eq!(FamilySpec::Hermite.norm_ratio(3).unwrap(), rat(3, 4));
        // Laguerre(a): ∏ k(k+a) at a = 1/2, n = 2: 1·(3/2)·2·(5/2) = 15/2.
        assert_eq!(laguerre(rat(1, 2)).norm_ratio(2).unwrap(), rat(15, 2));
    }

    #[test]
    fn derivative_lowers_into_shifted_family() {
        // Ĥ′_n = n Ĥ_{n−1}; L̂^{(a)}′_n = n L̂^{(a+1)}_{n−1};
        // Ĵ^{(a,b)}′_n = n Ĵ^{(a+1,b+1)}_{n−1}.
        for n in 1..=8usize {
            let h = FamilySpec::Hermite;
            assert_eq!(
                h.monic(n).unwrap().derivative(),
                h.monic(n - 1).unwrap().scale(&rat_int(n as i64))
            );

            let a = rat(1, 2);
            let l = laguerre(a.clone());
            let l_up = laguerre(&a + &rat_int(1));
            assert_eq!(
                l.monic(n).unwrap().derivative(),
                l_up.monic(n - 1).unwrap().scale(&rat_int(n as i64))
            );

            let (a, b) = (rat_int(3), rat(7, 3));
            let j = jacobi(a.clone(), b.clone());
            let j_up = jacobi(&a + &rat_int(1), &b + &rat_int(1));
            assert_eq!(
                j.monic(n).unwrap().derivative(),
                j_up.monic(n - 1).unwrap().scale(&rat_int(n as i64))
            );
        }
    }

    #[test]
    fn twisted_hermite_pins_and_parity() {
        assert_eq!(twisted_hermite(0), Poly::one());
        assert_eq!(twisted_hermite(1), Poly::x());
        assert_eq!(
            twisted_hermite(2),
            Poly::from_strings(&["1/2", "0", "1"]).unwrap()
        );
        assert_eq!(
            twisted_hermite(3),
            Poly::from_strings(&["0", "3/2", "0", "1"]).unwrap()
        );
        assert_eq!(
            twisted_hermite(4),
            Poly::from_strings(&["3/4", "0", "3", "0", "1"]).unwrap()
        );
        for n in 0..=7 {
            let h = twisted_hermite(n);
            let reflected = h.compose_affine(&rat_int(-1), &rat_int(0)).unwrap();
            let sign = rat_int(if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(reflected, h.scale(&sign));
        }
    }

    #[test]
    fn eta_pins() {
        let l = laguerre(rat_int(2));
        assert_eq!(
            eta_gamma(&l, XType::I).unwrap(),
            RatFunc::from_poly(Poly::one())
        );
        assert_eq!(
            eta_gamma(&l, XType::II).unwrap(),
            RatFunc::new(Poly::constant(rat_int(-2)), Poly::x()).unwrap()
        );
        assert_eq!(
            eta_gamma(&l, XType::III).unwrap(),
            RatFunc::new(Poly::from_strings(&["-2", "1"]).unwrap(), Poly::x()).unwrap()
        );

        let j = jacobi(rat_int(2), rat_int(3));
        assert_eq!(
            eta_gamma(&j, XType::I).unwrap(),
            RatFunc::new(
                Poly::constant(rat_int(-3)),
                Poly::from_strings(&["1", "1"]).unwrap()
            )
            .unwrap()
        );
        assert_eq!(
            eta_gamma(&j, XType::II).unwrap(),
            RatFunc::new(
                Poly::constant(rat_int(-2)),
                Poly::from_strings(&["-1", "1"]).unwrap()
            )
            .unwrap()
        );
        // η_III = ((a+b)x + (a−b))/(1−x²) = (−5x + 1)/(x² − 1).
        assert_eq!(
            eta_gamma(&j, XType::III).unwrap(),
            RatFunc::new(
                Poly::from_strings(&["1", "-5"]).unwrap(),
                Poly::from_strings(&["-1", "0", "1"]).unwrap()
            )
            .unwrap()
        );

        assert_eq!(
            eta_gamma(&FamilySpec::Hermite, XType::III).unwrap(),
            RatFunc::from_poly(Poly::from_strings(&["0", "2"]).unwrap())
        );
        assert!(matches!(
            eta_gamma(&FamilySpec::Hermite, XType::I),
            Err(Error::NonexistentCombination { .. })
        ));
    }

    #[test]
    fn gauged_b_pins() {
        let a = rat(7, 3);
        let l = laguerre(a.clone());
        // I: x + a + 1;  II: 1 − a − x;  III: x + 1 − a.
        assert_eq!(
            gauged_b(&l, XType::I).unwrap(),
            Poly::from_coeffs(vec![&a + &rat_int(1), rat_int(1)])
        );
        assert_eq!(
            gauged_b(&l, XType::II).unwrap(),
            Poly::from_coeffs(vec![rat_int(1) - &a, rat_int(-1)])
        );
        assert_eq!(
            gauged_b(&l, XType::III).unwrap(),
            Poly::from_coeffs(vec![rat_int(1) - &a, rat_int(1)])
        );
        assert_eq!(
            gauged_b(&FamilySpec::Hermite, XType::III).unwrap(),
            Poly::from_strings(&["0", "2"]).unwrap()
        );
        // Jacobi gauged B̃ equals the Bochner B of the seed family.
        for (t, src) in [
            (XType::I, jacobi(rat_int(2), rat_int(-3))),
            (XType::II, jacobi(rat_int(-2), rat_int(3))),
            (XType::III, jacobi(rat_int(-2), rat_int(-3))),
        ] {
            let base = jacobi(rat_int(2), rat_int(3));
            assert_eq!(gauged_b(&base, t).unwrap(), src.coeff_b(), "type {t}");
        }
    }

    #[test]
    fn gauge_constant_pins() {
        let (a, b) = (rat(7, 3), rat(1, 2));
        let l = laguerre(a.clone());
        assert_eq!(gauge_constant(&l, XType::I).unwrap(), &a + &rat_int(1));
        assert_eq!(gauge_constant(&l, XType::II).unwrap(), a.clone());
        assert_eq!(gauge_constant(&l, XType::III).unwrap(), rat_int(1));
        assert_eq!(
            gauge_constant(&FamilySpec::Hermite, XType::III).unwrap(),
            rat_int(2)
        );

        let j = jacobi(a.clone(), b.clone());
        assert_eq!(
            gauge_constant(&j, XType::I).unwrap(),
            &b * &(&a + &rat_int(1))
        );
        assert_eq!(
            gauge_constant(&j, XType::II).unwrap(),
            &a * &(&b + &rat_int(1))
        );
        assert_eq!(gauge_constant(&j, XType::III).unwrap(), &a + &b);
    }

    #[test]
    fn seeds_satisfy_gauged_eigen_equation() {
        let bases: Vec<FamilySpec> = vec![
            FamilySpec::Hermite,
            laguerre(rat(1, 2)),
            laguerre(rat(7, 3)),
            laguerre(rat_int(4)),
            jacobi(rat(7, 3), rat(7, 3)),
            jacobi(rat_int(4), rat(1, 2)),
        ];
        for fam in &bases {
            for t in XType::ALL {
                if fam.kind() == FamilyKind::Hermite && t != XType::III {
                    continue;
                }
                let a = fam.coeff_a();
                let bt = gauged_b(fam, t).unwrap();
                for j in 0..=4usize {
                    let q = match seed_polynomial_literal(fam, t, j) {
                        Ok(q) => q,
                        // Degenerate seed parameters are exercised elsewhere.
                        Err(_) => continue,
                    };
                    let lam = seed_eigenvalue_gauged(fam, t, j).unwrap();
                    let lhs = &(&a * &q.derivative().derivative()) + &(&bt * &q.derivative());
                    assert_eq!(lhs, q.scale(&lam), "{fam} type {t} j = {j}");
                }
            }
        }
    }

    #[test]
    fn seed_literal_and_monic_normalizations() {
        // Laguerre I: literal L̂_j^{(a)}(−x) has leading (−1)^j.
        let fam = laguerre(rat_int(1));
        let lit = seed_polynomial_literal(&fam, XType::I, 1).unwrap();
        assert_eq!(lit, Poly::from_strings(&["-2", "-1"]).unwrap());
        let monic = seed_polynomial(&fam, XType::I, 1).unwrap();
        assert_eq!(monic, Poly::from_strings(&["2", "1"]).unwrap());

        // Jacobi III j = 2 at a = b: seed = x² + 1/(2a−3).
        let a = rat(7, 3);
        let fam = jacobi(a.clone(), a.clone());
        let seed = seed_polynomial(&fam, XType::III, 2).unwrap();
        let c = rat_int(1) / (rat_int(2) * &a - rat_int(3));
        assert_eq!(seed, Poly::from_coeffs(vec![c, rat_int(0), rat_int(1)]));
    }

    #[test]
    fn offset_reduced_form_at_degenerate_denominator() {
        // Jacobi(1, −1): a+b = 0 makes the unreduced A_0 formula 0/0, the
        // reduced one gives (b−a)/(a+b+2) = −1.
        let fam = jacobi(rat_int(1), rat_int(-1));
        assert_eq!(fam.offset(0).unwrap(), rat_int(-1));
        // Jacobi(−1,−1): A_0 genuinely undefined.
        assert!(matches!(
            jacobi(rat_int(-1), rat_int(-1)).offset(0),
            Err(Error::RecurrenceUndefined { n: 0, .. })
        ));
    }

    #[test]
    fn parse_round_trips_for_kind_and_type() {
        for s in ["hermite", "laguerre", "jacobi"] {
            assert_eq!(FamilyKind::from_str(s).unwrap().to_string(), s);
        }
        assert_eq!(XType::from_str("2").unwrap(), XType::II);
        assert_eq!(XType::from_str("iii").unwrap(), XType::III);
        assert!(XType::from_str("IV").is_err());
        assert_eq!(parse_rat("7/3").unwrap(), rat(7, 3));
    }
}
