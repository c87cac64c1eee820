//! Validated exceptional-family descriptors and member construction.
//!
//! An [`XopSpec`] pins down one exceptional family: a base classical family,
//! a gauge type, the transformation order j, and everything derived from
//! them (seed polynomial, gauge log-derivative η, decoupling cofactor A_ρ).
//! Construction validates the combination up front — parameter range,
//! existence of the gauge, constructibility of the seed, non-vanishing of
//! the type's eigenvalue-gap divisor on the whole degree range — and, under
//! [`Strictness::Orthogonal`], rejects seeds with roots in the closed domain
//! (those invalidate the weight; [`Strictness::Algebraic`] only records the
//! count, leaving every polynomial identity checkable).
//!
//! Members are built by [`xop_poly`] from the type-specific first-order
//! formulas applied to classical targets; the same operator is exposed in
//! gauge-covariant form as [`apply_darboux`]. [`eigen_identity`] verifies,
//! in exact rational-function arithmetic, that a member is an eigenfunction
//! of the transformed second-order operator — the full Darboux structure in
//! one identity.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::classical::{
    eta_gamma, seed_eigenvalue_full, seed_polynomial_literal, FamilyKind, FamilySpec, XType,
};
use crate::error::Error;
use crate::ratpoly::{rat_int, sturm_count, Bound, ExactScalar, Poly, RatFunc};

/// Validation mode for [`XopSpec`] construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Require only the algebraic structure (seed constructible, divisors
    /// nonzero). Seeds may have roots in the domain; the count is recorded.
    Algebraic,
    /// Additionally require the seed to be root-free on the closed domain,
    /// so the family is genuinely orthogonal for an everywhere-defined
    /// positive weight.
    Orthogonal,
}

/// The degree set of an exceptional family: which member degrees exist.
///
/// Types I and II fill `{j, j+1, …}`; type III fills `{0} ∪ {j+1, j+2, …}`;
/// the classical degeneration (j = 0) fills all of ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSet {
    j: usize,
    xtype: Option<XType>,
}

impl DegreeSet {
    pub fn contains(&self, d: usize) -> bool {
        match self.xtype {
            None => true,
            Some(XType::I) | Some(XType::II) => d >= self.j,
            Some(XType::III) => d == 0 || d >= self.j + 1,
        }
    }

    pub fn is_gap(&self, d: usize) -> bool {
        !self.contains(d)
    }

    /// Smallest member degree.
    pub fn min_degree(&self) -> usize {
        match self.xtype {
            Some(XType::I) | Some(XType::II) => self.j,
            _ => 0,
        }
    }

    /// Classical target index behind the member of degree `d` (`None` for
    /// gap degrees and for the degree-0 extra member of type III).
    pub fn target_of(&self, d: usize) -> Option<usize> {
        match self.xtype {
            None => Some(d),
            Some(XType::I) | Some(XType::II) => d.checked_sub(self.j),
            Some(XType::III) => {
                if d >= self.j + 1 {
                    Some(d - self.j - 1)
                } else {
                    None
                }
            }
        }
    }

    /// Member degrees up to and including `dmax`.
    pub fn members_upto(&self, dmax: usize) -> Vec<usize> {
        (0..=dmax).filter(|&d| self.contains(d)).collect()
    }

    /// Member degree behind the printed row index `n`.
    ///
    /// Displayed relations for types I/II label rows by the classical
    /// target (member degree n+j); type III and the classical degeneration
    /// label rows by the member degree itself. `None` when `n` is an
    /// excluded (gap) degree of a type-III family.
    pub fn index_to_degree(&self, n: usize) -> Option<usize> {
        match self.xtype {
            None => Some(n),
            Some(XType::I) | Some(XType::II) => Some(n + self.j),
            Some(XType::III) => self.contains(n).then_some(n),
        }
    }

    /// Printed row index of the member of degree `d` (inverse of
    /// [`DegreeSet::index_to_degree`]).
    pub fn index_of_degree(&self, d: usize) -> Option<usize> {
        match self.xtype {
            None => Some(d),
            Some(XType::I) | Some(XType::II) => d.checked_sub(self.j),
            Some(XType::III) => self.contains(d).then_some(d),
        }
    }
}

/// Which denominator convention the type-III Jacobi weight uses. The two
/// candidate factors multiplying the seed differ only in the weight (hence
/// in quadrature); every polynomial identity is variant-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PiVariant {
    /// Denominator factor (1−x²)·seed — the one consistent with the
    /// construction operator; shifts Jacobi (a,b) to (a−1, b−1).
    Adopted,
    /// Denominator factor (1−x)²·seed; shifts Jacobi (a,b) to (a−3, b+1).
    Printed,
}

/// The exceptional weight written as a shifted classical base weight divided
/// by the square of the monic seed.
#[derive(Debug, Clone)]
pub struct XopWeight {
    /// Shifted classical family whose weight carries all endpoint behavior.
    pub base: FamilySpec,
    /// Monic seed; the full weight is `base_weight / den²`.
    pub den: Poly,
    pub variant: PiVariant,
}

/// A validated exceptional-family descriptor.
#[derive(Debug, Clone)]
pub struct XopSpec {
    family: FamilySpec,
    xtype: Option<XType>,
    j: usize,
    strictness: Strictness,
    seed: Poly,
    literal_seed: Poly,
    eta: RatFunc,
    a_rho: Poly,
    domain_root_count: usize,
}

impl XopSpec {
    /// Validates and assembles the exceptional family (family, type, j ≥ 1).
    pub fn new(
        family: FamilySpec,
        xtype: XType,
        j: usize,
        strictness: Strictness,
    ) -> Result<XopSpec, Error> {
        if j == 0 {
            return Err(Error::InvalidParameter {
                reason: "j = 0 is the classical degeneration; use XopSpec::classical".into(),
            });
        }
        check_base_params(&family)?;
        if family.kind() == FamilyKind::Hermite && xtype != XType::III {
            return Err(Error::NonexistentCombination {
                family: family.kind().to_string(),
                xtype: xtype.to_string(),
                j: j as u32,
                reason: "the Hermite weight has no finite singular point; only type III exists"
                    .into(),
            });
        }
        let eta = eta_gamma(&family, xtype)?;
        let a_rho = decoupling_cofactor(family.kind(), xtype);
        let literal_seed = seed_polynomial_literal(&family, xtype, j).map_err(|e| match e {
            Error::RecurrenceUndefined { .. } | Error::RodriguesUndefined { .. } => {
                Error::EigenvalueCollision {
                    family: family.kind().to_string(),
                    xtype: xtype.to_string(),
                    j: j as u32,
                    params: family.params_string(),
                    reason: e.to_string(),
                }
            }
            other => other,
        })?;
        let seed = literal_seed.monicized().expect("seed is nonzero").0;
        if let Some(n) = divisor_zero_degree(&family, xtype, j) {
            return Err(Error::DegenerateDivisor {
                family: family.kind().to_string(),
                xtype: xtype.to_string(),
                j: j as u32,
                params: family.params_string(),
                n,
            });
        }
        let domain_root_count = count_domain_roots(&seed, &family)?;
        if strictness == Strictness::Orthogonal && domain_root_count > 0 {
            return Err(Error::SeedHasRootsInDomain {
                family: family.kind().to_string(),
                xtype: xtype.to_string(),
                j: j as u32,
                params: family.params_string(),
                seed: seed.to_string(),
                count: domain_root_count,
            });
        }
        Ok(XopSpec {
            family,
            xtype: Some(xtype),
            j,
            strictness,
            seed,
            literal_seed,
            eta,
            a_rho,
            domain_root_count,
        })
    }

    /// The classical degeneration (j = 0): trivial seed, trivial gauge. All
    /// exceptional machinery specializes to the plain classical family.
    pub fn classical(family: FamilySpec) -> Result<XopSpec, Error> {
        check_base_params(&family)?;
        Ok(XopSpec {
            family,
            xtype: None,
            j: 0,
            strictness: Strictness::Orthogonal,
            seed: Poly::one(),
            literal_seed: Poly::one(),
            eta: RatFunc::zero(),
            a_rho: Poly::one(),
            domain_root_count: 0,
        })
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    /// `None` for the classical degeneration.
    pub fn xtype(&self) -> Option<XType> {
        self.xtype
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    /// Monic seed polynomial (degree j).
    pub fn seed(&self) -> &Poly {
        &self.seed
    }

    /// Seed in construction-formula normalization (reflected Laguerre seeds
    /// carry leading coefficient (−1)^j).
    pub fn literal_seed(&self) -> &Poly {
        &self.literal_seed
    }

    /// Gauge log-derivative η.
    pub fn eta(&self) -> &RatFunc {
        &self.eta
    }

    /// Decoupling cofactor A_ρ (clears the gauge denominator: A_ρ·η is a
    /// polynomial).
    pub fn a_rho(&self) -> &Poly {
        &self.a_rho
    }

    /// Distinct seed roots in the closed domain (0 under
    /// `Strictness::Orthogonal`).
    pub fn domain_root_count(&self) -> usize {
        self.domain_root_count
    }

    pub fn degree_set(&self) -> DegreeSet {
        DegreeSet {
            j: self.j,
            xtype: self.xtype,
        }
    }

    /// Human-readable spec label for error contexts.
    pub fn label(&self) -> String {
        let params = match self.family.params_string().as_str() {
            "-" => String::new(),
            p => format!(" ({p})"),
        };
        match self.xtype {
            Some(t) => {
                format!("{} type {} j = {}{}", self.family.kind(), t, self.j, params)
            }
            None => format!("{} classical{}", self.family.kind(), params),
        }
    }
}

fn check_base_params(family: &FamilySpec) -> Result<(), Error> {
    let ok = match family {
        FamilySpec::Hermite => true,
        FamilySpec::Laguerre { a } => (a + rat_int(1)).is_positive(),
        FamilySpec::Jacobi { a, b } => {
            (a + rat_int(1)).is_positive() && (b + rat_int(1)).is_positive()
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            reason: format!("base family {family} needs every exponent > -1"),
        })
    }
}

/// The cofactor A_ρ for (family kind, type): 1, 1, x, x, 1+x, 1−x, 1−x²
/// along (Hermite III, Laguerre I, Laguerre II, Laguerre III, Jacobi I,
/// Jacobi II, Jacobi III).
fn decoupling_cofactor(kind: FamilyKind, t: XType) -> Poly {
    match (kind, t) {
        (FamilyKind::Hermite, _) => Poly::one(),
        (FamilyKind::Laguerre, XType::I) => Poly::one(),
        (FamilyKind::Laguerre, _) => Poly::x(),
        (FamilyKind::Jacobi, XType::I) => Poly::from_coeffs(vec![rat_int(1), rat_int(1)]),
        (FamilyKind::Jacobi, XType::II) => Poly::from_coeffs(vec![rat_int(1), rat_int(-1)]),
        (FamilyKind::Jacobi, XType::III) => {
            Poly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-1)])
        }
    }
}

/// The printed-formula degree at which the type's divisor vanishes, if that
/// degree lies in the range the formula runs over.
fn divisor_zero_degree(family: &FamilySpec, t: XType, j: usize) -> Option<u64> {
    let jr = rat_int(j as i64);
    let (nstar, lower): (ExactScalar, u64) = match (family, t) {
        (FamilySpec::Laguerre { a }, XType::II) => (&jr - a, 0),
        (FamilySpec::Jacobi { b, .. }, XType::I) => (&jr - b, 0),
        (FamilySpec::Jacobi { a, .. }, XType::II) => (&jr - a, 0),
        (FamilySpec::Jacobi { a, b }, XType::III) => {
            (rat_int(2 * j as i64 + 1) - a - b, j as u64 + 1)
        }
        _ => return None,
    };
    if !nstar.is_integer() {
        return None;
    }
    let n = nstar.to_integer().to_u64()?; // negative → None → not in range
    (n >= lower).then_some(n)
}

fn count_domain_roots(seed: &Poly, family: &FamilySpec) -> Result<usize, Error> {
    if seed.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let (lo, hi) = family.domain();
    // sturm_count covers the half-open (lo, hi]; add the finite lower
    // endpoint separately to close the interval.
    let mut count = sturm_count(seed, &lo, &hi)?;
    if let Bound::Finite(x) = &lo {
        if seed.eval(x).is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

fn rf(p: Poly) -> RatFunc {
    RatFunc::from_poly(p)
}

/// `q (U p′ + V p) − U q′ p` — the shared shape of all construction
/// formulas.
fn bracket(q: &Poly, u: &Poly, v: &Poly, p: &Poly) -> Poly {
    let inner = &(u * &p.derivative()) + &(v * p);
    &(q * &inner) - &(&(u * &q.derivative()) * p)
}

/// Monic exceptional member of degree `d`.
///
/// Gap degrees are rejected; on a validated spec every other degree yields
/// an exactly monic polynomial. Each type uses its printed first-order
/// construction applied to the classical target behind `d`.
pub fn xop_poly(spec: &XopSpec, d: usize) -> Result<Poly, Error> {
    let Some(t) = spec.xtype() else {
        return spec.family().monic(d);
    };
    let set = spec.degree_set();
    if set.is_gap(d) {
        return Err(Error::InvalidParameter {
            reason: format!("degree {d} is a gap degree of {}", spec.label()),
        });
    }
    if t == XType::III && d == 0 {
        return Ok(Poly::one());
    }
    let target = set
        .target_of(d)
        .expect("non-gap, nonzero degree has a target");
    let p = spec.family().monic(target)?;
    let q = spec.literal_seed();
    let j = spec.j();
    let minus_one_pow_j1 = rat_int(if (j + 1) % 2 == 0 { 1 } else { -1 });
    let nr = rat_int(target as i64);
    let dr = rat_int(d as i64);
    let jr = rat_int(j as i64);

    // (U, V, overall scalar) per (family, type).
    let (u, v, mult): (Poly, Poly, ExactScalar) = match (spec.family(), t) {
        (FamilySpec::Hermite, XType::III) => (
            Poly::one(),
            Poly::from_coeffs(vec![rat_int(0), rat_int(-2)]),
            crate::ratpoly::rat(-1, 2),
        ),
        (FamilySpec::Laguerre { .. }, XType::I) => {
            (Poly::one(), Poly::constant(rat_int(-1)), minus_one_pow_j1)
        }
        (FamilySpec::Laguerre { a }, XType::II) => {
            let div = &(&nr + a) - &jr;
            (
                Poly::x(),
                Poly::constant(a.clone()),
                invert_divisor(spec, target as u64, div)?,
            )
        }
        (FamilySpec::Laguerre { a }, XType::III) => (
            Poly::x(),
            Poly::from_coeffs(vec![a.clone(), rat_int(-1)]),
            minus_one_pow_j1,
        ),
        (FamilySpec::Jacobi { b, .. }, XType::I) => {
            let div = &(&nr + b) - &jr;
            (
                Poly::from_coeffs(vec![rat_int(1), rat_int(1)]),
                Poly::constant(b.clone()),
                invert_divisor(spec, target as u64, div)?,
            )
        }
        (FamilySpec::Jacobi { a, .. }, XType::II) => {
            let div = &(&jr - &nr) - a;
            (
                Poly::from_coeffs(vec![rat_int(1), rat_int(-1)]),
                Poly::constant(-a),
                invert_divisor(spec, target as u64, div)?,
            )
        }
        (FamilySpec::Jacobi { a, b }, XType::III) => {
            let div = &(&(&dr + a) + &(b - rat_int(1))) - &(rat_int(2) * &jr);
            (
                Poly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]),
                Poly::from_coeffs(vec![a - b, a + b]),
                invert_divisor(spec, d as u64, div)?,
            )
        }
        (FamilySpec::Hermite, _) => unreachable!("validated spec"),
    };

    let result = bracket(q, &u, &v, &p).scale(&mult);
    if !result.is_monic() || result.degree() != Some(d) {
        return Err(Error::IdentityViolation {
            context: format!("construction normalization for {} degree {d}", spec.label()),
            lhs: result.to_string(),
            rhs: format!("a monic polynomial of degree {d}"),
            difference: result.to_string(),
        });
    }
    Ok(result)
}

fn invert_divisor(spec: &XopSpec, n: u64, div: ExactScalar) -> Result<ExactScalar, Error> {
    if div.is_zero() {
        return Err(Error::DegenerateDivisor {
            family: spec.family().kind().to_string(),
            xtype: spec.xtype().expect("exceptional").to_string(),
            j: spec.j() as u32,
            params: spec.family().params_string(),
            n,
        });
    }
    Ok(rat_int(1) / div)
}

/// Applies the gauge-covariant first-order Darboux operator of `spec` to a
/// quasi-polynomial `target·exp(∫ target_eta)`:
///
/// `A_ρ · [ q·(target′ + target_eta·target) − (η·q + q′)·target ]`
///
/// With `target_eta = 0` this is the raw construction operator on classical
/// polynomials; with `target = seed` and `target_eta = η` it annihilates the
/// seed exactly. The result must close into a polynomial.
pub fn apply_darboux(spec: &XopSpec, target: &Poly, target_eta: &RatFunc) -> Result<Poly, Error> {
    let q = rf(spec.seed().clone());
    let t = rf(target.clone());
    let first = &rf(target.derivative()) + &(target_eta * &t);
    let lowering = &(&spec.eta * &q) + &rf(spec.seed().derivative());
    let expr = &(&q * &first) - &(&lowering * &t);
    let full = &rf(spec.a_rho().clone()) * &expr;
    match full.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::NonPolynomialResult {
            context: format!("first-order Darboux operator of {}", spec.label()),
            denominator: full.den().to_string(),
        }),
    }
}

/// Eigenvalue of the degree-`d` member under the transformed second-order
/// operator: the classical eigenvalue of the target behind `d`, or the full
/// seed eigenvalue λ_ρ for the degree-0 extra member of type III.
pub fn member_eigenvalue(spec: &XopSpec, d: usize) -> Result<ExactScalar, Error> {
    let Some(t) = spec.xtype() else {
        return Ok(spec.family().eigenvalue(d));
    };
    let set = spec.degree_set();
    if set.is_gap(d) {
        return Err(Error::InvalidParameter {
            reason: format!("degree {d} is a gap degree of {}", spec.label()),
        });
    }
    match set.target_of(d) {
        Some(n) => Ok(spec.family().eigenvalue(n)),
        None => seed_eigenvalue_full(spec.family(), t, spec.j()),
    }
}

/// Verifies in exact rational-function arithmetic that the degree-`d` member
/// is an eigenfunction of the transformed operator
///
/// `A ∂² + (A′ + B − 2A g′/g) ∂ + [A(2(g′/g)² − g″/g) − (A′+B) g′/g + C̃ + λ_ρ]`
///
/// with `g = A_ρ·q`, `v = η + q′/q` and `C̃ = B′ + A′v + Av′ − vB − Av²`:
/// the factorization A∂² + B∂ − λ_ρ = M·N with N = ∂ − v gives the partner
/// N·M + λ_ρ, transferred here to the polynomial parts. The classical
/// degeneration checks the plain Bochner identity.
pub fn eigen_identity(spec: &XopSpec, d: usize) -> Result<(), Error> {
    let p = xop_poly(spec, d)?;
    let lam = member_eigenvalue(spec, d)?;
    let a = rf(spec.family().coeff_a());
    let b = rf(spec.family().coeff_b());

    let (lhs, rhs) = if spec.xtype().is_none() {
        let lhs = &(&a * &rf(p.derivative().derivative())) + &(&b * &rf(p.derivative()));
        (lhs, rf(p.scale(&lam)))
    } else {
        let q = rf(spec.seed().clone());
        let v = &spec.eta + &(&rf(spec.seed().derivative()) / &q);
        let g = spec.a_rho() * spec.seed();
        let gr = rf(g.clone());
        let r = &rf(g.derivative()) / &gr;
        let apb = rf(&spec.family().coeff_a().derivative() + &spec.family().coeff_b());
        let two = RatFunc::constant(rat_int(2));

        let av = &a * &v;
        let ctilde = &(&(&rf(spec.family().coeff_b().derivative())
            + &(&rf(spec.family().coeff_a().derivative()) * &v))
            + &(&a * &v.derivative()))
            - &(&(&v * &b) + &(&av * &v));

        let lam_rho =
            seed_eigenvalue_full(spec.family(), spec.xtype().expect("exceptional"), spec.j())?;
        let first = &apb - &(&(&two * &a) * &r);
        let r2 = &r * &r;
        let gpp_g = &rf(g.derivative().derivative()) / &gr;
        let zeroth = &(&(&(&a * &(&(&two * &r2) - &gpp_g)) - &(&apb * &r)) + &ctilde)
            + &RatFunc::constant(lam_rho);

        let lhs = &(&(&a * &rf(p.derivative().derivative())) + &(&first * &rf(p.derivative())))
            + &(&zeroth * &rf(p.clone()));
        (lhs, rf(p.scale(&lam)))
    };

    if lhs == rhs {
        Ok(())
    } else {
        let diff = &lhs - &rhs;
        Err(Error::IdentityViolation {
            context: format!(
                "second-order eigen-identity for {} degree {d}",
                spec.label()
            ),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            difference: diff.to_string(),
        })
    }
}

/// Weight of the exceptional family written as shifted-base-weight / seed².
///
/// The shift absorbs the cofactor A_ρ and the operator factor A into the
/// classical exponents; only the type-III Jacobi family is sensitive to the
/// denominator `variant`.
pub fn weight_data(spec: &XopSpec, variant: PiVariant) -> XopWeight {
    let Some(t) = spec.xtype() else {
        return XopWeight {
            base: spec.family().clone(),
            den: Poly::one(),
            variant,
        };
    };
    let base = match (spec.family(), t) {
        (FamilySpec::Hermite, _) => FamilySpec::Hermite,
        (FamilySpec::Laguerre { a }, XType::I) => FamilySpec::Laguerre { a: a + rat_int(1) },
        (FamilySpec::Laguerre { a }, _) => FamilySpec::Laguerre { a: a - rat_int(1) },
        (FamilySpec::Jacobi { a, b }, XType::I) => FamilySpec::Jacobi {
            a: a + rat_int(1),
            b: b - rat_int(1),
        },
        (FamilySpec::Jacobi { a, b }, XType::II) => FamilySpec::Jacobi {
            a: a - rat_int(1),
            b: b + rat_int(1),
        },
        (FamilySpec::Jacobi { a, b }, XType::III) => match variant {
            PiVariant::Adopted => FamilySpec::Jacobi {
                a: a - rat_int(1),
                b: b - rat_int(1),
            },
            PiVariant::Printed => FamilySpec::Jacobi {
                a: a - rat_int(3),
                b: b + rat_int(1),
            },
        },
    };
    XopWeight {
        base,
        den: spec.seed().clone(),
        variant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn spec(fam: FamilySpec, t: XType, j: usize, strictness: Strictness) -> Result<XopSpec, Error> {
        XopSpec::new(fam, t, j, strictness)
    }

    fn laguerre(a: ExactScalar) -> FamilySpec {
        FamilySpec::Laguerre { a }
    }
    fn jacobi(a: ExactScalar, b: ExactScalar) -> FamilySpec {
        FamilySpec::Jacobi { a, b }
    }

    /// A representative grid of valid specs under Algebraic strictness.
    fn algebraic_grid() -> Vec<XopSpec> {
        let mut out = vec![
            spec(FamilySpec::Hermite, XType::III, 2, Strictness::Algebraic).unwrap(),
            spec(FamilySpec::Hermite, XType::III, 4, Strictness::Algebraic).unwrap(),
        ];
        for j in [1usize, 2] {
            for a in [rat(1, 2), rat(7, 3), rat_int(4)] {
                out.push(spec(laguerre(a.clone()), XType::I, j, Strictness::Algebraic).unwrap());
                out.push(spec(laguerre(a.clone()), XType::II, j, Strictness::Algebraic).unwrap());
                out.push(spec(laguerre(a.clone()), XType::III, j, Strictness::Algebraic).unwrap());
            }
            for a in [rat(7, 3), rat_int(4)] {
                out.push(
                    spec(
                        jacobi(a.clone(), a.clone()),
                        XType::I,
                        j,
                        Strictness::Algebraic,
                    )
                    .unwrap(),
                );
                out.push(
                    spec(
                        jacobi(a.clone(), a.clone()),
                        XType::II,
                        j,
                        Strictness::Algebraic,
                    )
                    .unwrap(),
                );
                out.push(
                    spec(
                        jacobi(a.clone(), a.clone()),
                        XType::III,
                        j,
                        Strictness::Algebraic,
                    )
                    .unwrap(),
                );
            }
        }
        out
    }

    #[test]
    fn members_are_monic_with_correct_degrees() {
        for s in algebraic_grid() {
            let set = s.degree_set();
            for d in set.members_upto(12) {
                let p = xop_poly(&s, d).unwrap();
                assert_eq!(p.degree(), Some(d), "{}", s.label());
                assert!(p.is_monic(), "{} degree {d}", s.label());
            }
            // Gap degrees are rejected.
            for d in 0..set.min_degree() {
                assert!(xop_poly(&s, d).is_err());
            }
            if s.xtype() == Some(XType::III) {
                for d in 1..=s.j() {
                    assert!(xop_poly(&s, d).is_err(), "gap degree {d} accepted");
                }
            }
        }
    }

    #[test]
    fn laguerre_type_one_pin() {
        let s = spec(laguerre(rat_int(1)), XType::I, 1, Strictness::Orthogonal).unwrap();
        assert_eq!(s.seed(), &Poly::from_strings(&["2", "1"]).unwrap());
        assert_eq!(
            s.literal_seed(),
            &Poly::from_strings(&["-2", "-1"]).unwrap()
        );
        // degree-1 member (target n = 0): x + a + 2 = x + 3.
        let p = xop_poly(&s, 1).unwrap();
        assert_eq!(p, Poly::from_strings(&["3", "1"]).unwrap());
    }

    #[test]
    fn hermite_type_three_pin() {
        let s = spec(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap();
        // degree-3 member equals the twisted polynomial of degree 3.
        let p = xop_poly(&s, 3).unwrap();
        assert_eq!(p, Poly::from_strings(&["0", "3/2", "0", "1"]).unwrap());
        assert_eq!(xop_poly(&s, 0).unwrap(), Poly::one());
    }

    #[test]
    fn jacobi_type_three_pin() {
        // a = b: degree-(j+1) member is x² + 1/(2a−1) for j = 1.
        let a = rat(7, 3);
        let s = spec(
            jacobi(a.clone(), a.clone()),
            XType::III,
            1,
            Strictness::Algebraic,
        )
        .unwrap();
        let p = xop_poly(&s, 2).unwrap();
        let c = rat_int(1) / (rat_int(2) * &a - rat_int(1));
        assert_eq!(p, Poly::from_coeffs(vec![c, rat_int(0), rat_int(1)]));
    }

    #[test]
    fn construction_matches_darboux_operator() {
        for s in algebraic_grid() {
            let set = s.degree_set();
            for d in set.members_upto(9) {
                let Some(target) = set.target_of(d) else {
                    continue;
                };
                let t = s.family().monic(target).unwrap();
                let raw = apply_darboux(&s, &t, &RatFunc::zero()).unwrap();
                let (monic, _) = raw.monicized().expect("nonzero");
                assert_eq!(monic, xop_poly(&s, d).unwrap(), "{} degree {d}", s.label());
            }
        }
    }

    #[test]
    fn darboux_annihilates_its_own_seed() {
        for s in algebraic_grid() {
            let out = apply_darboux(&s, &s.seed().clone(), &s.eta().clone()).unwrap();
            assert!(out.is_zero(), "{}", s.label());
        }
    }

    #[test]
    fn eigen_identity_holds_across_grid() {
        for s in algebraic_grid() {
            for d in s.degree_set().members_upto(7) {
                eigen_identity(&s, d).unwrap();
            }
        }
        // Classical degeneration too.
        let c = XopSpec::classical(laguerre(rat(1, 2))).unwrap();
        for d in 0..=6 {
            eigen_identity(&c, d).unwrap();
        }
    }

    #[test]
    fn reflection_swaps_jacobi_types() {
        let (a, b) = (rat_int(4), rat(1, 2));
        let s1 = spec(
            jacobi(a.clone(), b.clone()),
            XType::I,
            1,
            Strictness::Algebraic,
        )
        .unwrap();
        let s2 = spec(
            jacobi(b.clone(), a.clone()),
            XType::II,
            1,
            Strictness::Algebraic,
        )
        .unwrap();
        for d in s1.degree_set().members_upto(8) {
            let p1 = xop_poly(&s1, d).unwrap();
            let reflected = p1.compose_affine(&rat_int(-1), &rat_int(0)).unwrap();
            let sign = rat_int(if d % 2 == 0 { 1 } else { -1 });
            assert_eq!(
                reflected.scale(&sign),
                xop_poly(&s2, d).unwrap(),
                "degree {d}"
            );
        }
    }

    #[test]
    fn validation_grid_matches_expectations() {
        // Divisor degeneracies.
        assert!(matches!(
            spec(laguerre(rat_int(1)), XType::II, 1, Strictness::Algebraic),
            Err(Error::DegenerateDivisor { n: 0, .. })
        ));
        assert!(matches!(
            spec(
                jacobi(rat_int(1), rat_int(1)),
                XType::I,
                1,
                Strictness::Algebraic
            ),
            Err(Error::DegenerateDivisor { n: 0, .. })
        ));
        assert!(matches!(
            spec(
                jacobi(rat(1, 2), rat(1, 2)),
                XType::III,
                1,
                Strictness::Algebraic
            ),
            Err(Error::DegenerateDivisor { n: 2, .. })
        ));
        assert!(matches!(
            spec(
                jacobi(rat_int(1), rat_int(1)),
                XType::III,
                2,
                Strictness::Algebraic
            ),
            Err(Error::DegenerateDivisor { n: 3, .. })
        ));
        // Seed collapse: degree-1 member of jacobi(−1,−1) is undefined.
        assert!(matches!(
            spec(
                jacobi(rat_int(1), rat_int(1)),
                XType::III,
                1,
                Strictness::Algebraic
            ),
            Err(Error::EigenvalueCollision { .. })
        ));
        // Seed roots: Jacobi III j = 1 seed is x — always a root at 0.
        let a = rat(7, 3);
        let s = spec(
            jacobi(a.clone(), a.clone()),
            XType::III,
            1,
            Strictness::Algebraic,
        )
        .unwrap();
        assert_eq!(s.domain_root_count(), 1);
        assert!(matches!(
            spec(
                jacobi(a.clone(), a.clone()),
                XType::III,
                1,
                Strictness::Orthogonal
            ),
            Err(Error::SeedHasRootsInDomain { count: 1, .. })
        ));
        // Laguerre III: root at a−1 ≥ 0 for a ≥ 1, outside the domain for
        // a < 1.
        assert!(spec(laguerre(rat(1, 2)), XType::III, 1, Strictness::Orthogonal).is_ok());
        assert!(matches!(
            spec(laguerre(rat_int(1)), XType::III, 1, Strictness::Orthogonal),
            Err(Error::SeedHasRootsInDomain { count: 1, .. })
        ));
        assert!(matches!(
            spec(laguerre(rat_int(4)), XType::III, 1, Strictness::Orthogonal),
            Err(Error::SeedHasRootsInDomain { count: 1, .. })
        ));
        // Laguerre II at a = 1/2: seed root at 1/2 blocks orthogonality only.
        assert!(spec(laguerre(rat(1, 2)), XType::II, 1, Strictness::Algebraic).is_ok());
        assert!(matches!(
            spec(laguerre(rat(1, 2)), XType::II, 1, Strictness::Orthogonal),
            Err(Error::SeedHasRootsInDomain { .. })
        ));
        // Nonexistent combination and parameter range.
        assert!(matches!(
            spec(FamilySpec::Hermite, XType::I, 2, Strictness::Algebraic),
            Err(Error::NonexistentCombination { .. })
        ));
        assert!(matches!(
            spec(laguerre(rat_int(-2)), XType::I, 1, Strictness::Algebraic),
            Err(Error::InvalidParameter { .. })
        ));
        // Odd twisted Hermite seeds vanish at 0.
        assert!(matches!(
            spec(FamilySpec::Hermite, XType::III, 3, Strictness::Orthogonal),
            Err(Error::SeedHasRootsInDomain { .. })
        ));
        assert!(spec(FamilySpec::Hermite, XType::III, 3, Strictness::Algebraic).is_ok());
    }

    #[test]
    fn degree_sets() {
        let s = spec(laguerre(rat(7, 3)), XType::I, 2, Strictness::Orthogonal).unwrap();
        let set = s.degree_set();
        assert_eq!(set.members_upto(5), vec![2, 3, 4, 5]);
        assert_eq!(set.target_of(2), Some(0));
        assert!(set.is_gap(1));

        let s = spec(
            jacobi(rat(7, 3), rat(7, 3)),
            XType::III,
            2,
            Strictness::Algebraic,
        )
        .unwrap();
        let set = s.degree_set();
        assert_eq!(set.members_upto(5), vec![0, 3, 4, 5]);
        assert_eq!(set.target_of(3), Some(0));
        assert_eq!(set.target_of(0), None);

        let c = XopSpec::classical(FamilySpec::Hermite).unwrap();
        assert_eq!(c.degree_set().members_upto(3), vec![0, 1, 2, 3]);
        assert_eq!(c.degree_set().target_of(3), Some(3));
    }

    #[test]
    fn cofactor_pins() {
        let h = spec(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap();
        assert_eq!(h.a_rho(), &Poly::one());
        let l1 = spec(laguerre(rat_int(4)), XType::I, 1, Strictness::Orthogonal).unwrap();
        assert_eq!(l1.a_rho(), &Poly::one());
        let l2 = spec(laguerre(rat_int(4)), XType::II, 1, Strictness::Orthogonal).unwrap();
        assert_eq!(l2.a_rho(), &Poly::x());
        let j3 = spec(
            jacobi(rat(7, 3), rat(7, 3)),
            XType::III,
            2,
            Strictness::Orthogonal,
        )
        .unwrap();
        assert_eq!(j3.a_rho(), &Poly::from_strings(&["1", "0", "-1"]).unwrap());
        // A_ρ·η is a polynomial for every grid spec.
        for s in algebraic_grid() {
            let prod = &rf(s.a_rho().clone()) * s.eta();
            assert!(prod.as_poly().is_some(), "{}", s.label());
        }
    }

    #[test]
    fn weight_fold_pins() {
        let mk = |fam, t, j| spec(fam, t, j, Strictness::Algebraic).unwrap();
        let w = weight_data(&mk(laguerre(rat(7, 3)), XType::I, 1), PiVariant::Adopted);
        assert_eq!(w.base, laguerre(rat(10, 3)));
        let w = weight_data(&mk(laguerre(rat(7, 3)), XType::II, 1), PiVariant::Adopted);
        assert_eq!(w.base, laguerre(rat(4, 3)));
        let w = weight_data(&mk(laguerre(rat(7, 3)), XType::III, 1), PiVariant::Adopted);
        assert_eq!(w.base, laguerre(rat(4, 3)));
        let w = weight_data(
            &mk(jacobi(rat_int(4), rat(1, 2)), XType::I, 1),
            PiVariant::Adopted,
        );
        assert_eq!(w.base, jacobi(rat_int(5), rat(-1, 2)));
        let w = weight_data(
            &mk(jacobi(rat(7, 3), rat(7, 3)), XType::III, 2),
            PiVariant::Adopted,
        );
        assert_eq!(w.base, jacobi(rat(4, 3), rat(4, 3)));
        let w = weight_data(
            &mk(jacobi(rat(7, 3), rat(7, 3)), XType::III, 2),
            PiVariant::Printed,
        );
        assert_eq!(w.base, jacobi(rat(-2, 3), rat(10, 3)));
        assert_eq!(
            w.den,
            seedless_den(&mk(jacobi(rat(7, 3), rat(7, 3)), XType::III, 2))
        );

        let c = XopSpec::classical(laguerre(rat(7, 3))).unwrap();
        let w = weight_data(&c, PiVariant::Adopted);
        assert_eq!(w.base, laguerre(rat(7, 3)));
        assert_eq!(w.den, Poly::one());
    }

    fn seedless_den(s: &XopSpec) -> Poly {
        s.seed().clone()
    }

    #[test]
    fn member_eigenvalues() {
        // Type III degree-0 member carries the full seed eigenvalue.
        let s = spec(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap();
        // λ_ρ = λ̃ + c = 2j + 2 = 6.
        assert_eq!(member_eigenvalue(&s, 0).unwrap(), rat_int(6));
        // Upper branch: classical target eigenvalue.
        assert_eq!(member_eigenvalue(&s, 3).unwrap(), rat_int(0));
        assert_eq!(member_eigenvalue(&s, 4).unwrap(), rat_int(-2));
    }
}
