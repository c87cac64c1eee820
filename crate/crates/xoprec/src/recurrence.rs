//! Band recurrence relations: multipliers, exact basis expansion, the
//! 2j+3- and 4j+1-term relations, and their serialized tables.
//!
//! Multiplying a degree-n member of an exceptional family by a fixed
//! degree-(j+1) multiplier I_j expands back into the family with shifts
//! |l| ≤ j+1 — a banded analogue of the classical three-term recurrence
//! (which it reproduces verbatim at j = 0). The multiplier is determined up
//! to its integration constant: the `raw` convention fixes the constant
//! term of the antiderivative to zero, the `closed` convention matches the
//! printed monic multipliers; their difference must be an exact constant.
//! Squaring the seed instead gives the older 4j+1-term relation for types
//! I/II. For type III the closed multiplier itself decomposes inside the
//! family as P̂_{j+1} + β·P̂_0.

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::classical::{twisted_hermite, FamilySpec, XType};
use crate::error::Error;
use crate::ratpoly::{fmt_rat, parse_rat, rat_int, ExactScalar, Poly};
use crate::xop::{xop_poly, XopSpec};

/// Integration-constant convention for the band multiplier I_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Antiderivative of the monic seed, scaled monic, constant term zero.
    Raw,
    /// The printed monic multiplier (raw shifted by an exact constant).
    Closed,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Raw => "raw",
            Convention::Closed => "closed",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "raw" => Ok(Convention::Raw),
            "closed" => Ok(Convention::Closed),
            other => Err(Error::InvalidParameter {
                reason: format!("unknown multiplier convention {other:?} (raw|closed)"),
            }),
        }
    }
}

/// The degree-(j+1) band multiplier in both conventions.
#[derive(Debug, Clone)]
pub struct Multiplier {
    raw: Poly,
    closed: Poly,
    shift: ExactScalar,
    has_printed_closed: bool,
}

impl Multiplier {
    /// Builds both conventions for `spec` and verifies they differ by an
    /// exact constant.
    ///
    /// Families without a printed closed form (type-II Jacobi and the
    /// classical degeneration) reuse the raw multiplier with shift zero.
    pub fn compute(spec: &XopSpec) -> Result<Multiplier, Error> {
        let j = spec.j();
        let raw = spec.seed().antiderivative().scale(&rat_int(j as i64 + 1));
        let (closed, has_printed_closed) = match (spec.family(), spec.xtype()) {
            (_, None) => (raw.clone(), false),
            (FamilySpec::Hermite, _) => (twisted_hermite(j + 1), true),
            (FamilySpec::Laguerre { a }, Some(XType::I)) => {
                let base = FamilySpec::Laguerre { a: a - rat_int(1) }.monic(j + 1)?;
                (reflect_monic(&base), true)
            }
            (FamilySpec::Laguerre { a }, Some(XType::II)) => (
                FamilySpec::Laguerre { a: -a - rat_int(1) }.monic(j + 1)?,
                true,
            ),
            (FamilySpec::Laguerre { a }, Some(XType::III)) => {
                let base = FamilySpec::Laguerre { a: -a - rat_int(1) }.monic(j + 1)?;
                (reflect_monic(&base), true)
            }
            (FamilySpec::Jacobi { a, b }, Some(XType::I)) => (
                FamilySpec::Jacobi {
                    a: a - rat_int(1),
                    b: -b - rat_int(1),
                }
                .monic(j + 1)?,
                true,
            ),
            (FamilySpec::Jacobi { .. }, Some(XType::II)) => (raw.clone(), false),
            (FamilySpec::Jacobi { a, b }, Some(XType::III)) => (
                FamilySpec::Jacobi {
                    a: -a - rat_int(1),
                    b: -b - rat_int(1),
                }
                .monic(j + 1)?,
                true,
            ),
        };
        let diff = &closed - &raw;
        if !diff.is_constant() {
            return Err(Error::ClosedFormMismatch {
                context: format!("band multiplier of {}", spec.label()),
                raw: raw.to_string(),
                closed: closed.to_string(),
                difference: diff.to_string(),
            });
        }
        Ok(Multiplier {
            raw,
            closed,
            shift: diff.constant_term(),
            has_printed_closed,
        })
    }

    pub fn poly(&self, convention: Convention) -> &Poly {
        match convention {
            Convention::Raw => &self.raw,
            Convention::Closed => &self.closed,
        }
    }

    pub fn raw(&self) -> &Poly {
        &self.raw
    }

    pub fn closed(&self) -> &Poly {
        &self.closed
    }

    /// Exact constant `closed − raw`.
    pub fn shift(&self) -> &ExactScalar {
        &self.shift
    }

    /// Whether a printed closed form exists for this spec (otherwise
    /// `closed` is an alias of `raw`).
    pub fn has_printed_closed(&self) -> bool {
        self.has_printed_closed
    }
}

/// `p(−x)` normalized back to monic.
fn reflect_monic(p: &Poly) -> Poly {
    let reflected = p
        .compose_affine(&rat_int(-1), &rat_int(0))
        .expect("scale −1 is invertible");
    reflected.monicized().expect("nonzero").0
}

/// Expands `target` exactly in the members of `spec`, highest degree first.
///
/// Greedy degree reduction: the leading term must always sit on a member
/// degree (a nonzero coefficient demanded at a gap degree is an
/// [`Error::UnrepresentableTarget`]). Returns (degree, coefficient) pairs
/// with nonzero coefficients, descending by degree.
pub fn expand_in_xop_basis(
    spec: &XopSpec,
    target: &Poly,
    context: &str,
) -> Result<Vec<(usize, ExactScalar)>, Error> {
    let set = spec.degree_set();
    let mut rem = target.clone();
    let mut out = Vec::new();
    while let Some(d) = rem.degree() {
        if set.is_gap(d) {
            return Err(Error::UnrepresentableTarget {
                context: context.to_string(),
                degree: d as u64,
                remainder: rem.to_string(),
            });
        }
        let c = rem.leading().expect("nonzero remainder").clone();
        let member = xop_poly(spec, d)?;
        rem = &rem - &member.scale(&c);
        debug_assert!(rem.degree().map_or(true, |r| r < d));
        out.push((d, c));
    }
    Ok(out)
}

/// Maps a printed row index to the member degree it labels.
fn row_degree(spec: &XopSpec, n: usize) -> Result<usize, Error> {
    spec.degree_set()
        .index_to_degree(n)
        .ok_or_else(|| Error::InvalidParameter {
            reason: format!("index {n} is an excluded (gap) degree of {}", spec.label()),
        })
}

/// Expands `mult · P̂` for row index `n` and returns the band coefficients
/// keyed by shift `l` (descending), enforcing `|l| ≤ band`.
fn band_expand(
    spec: &XopSpec,
    mult: &Poly,
    n: usize,
    band: i64,
    context: &str,
) -> Result<Vec<(i64, ExactScalar)>, Error> {
    let d = row_degree(spec, n)?;
    let member = xop_poly(spec, d)?;
    let product = mult * &member;
    let expansion = expand_in_xop_basis(spec, &product, context)?;
    let mut out = Vec::with_capacity(expansion.len());
    for (m, c) in expansion {
        let l = m as i64 - d as i64;
        if l.abs() > band {
            return Err(Error::SparsityViolation {
                context: context.to_string(),
                n: n as u64,
                l,
                coeff: fmt_rat(&c),
                band,
            });
        }
        out.push((l, c));
    }
    Ok(out)
}

/// Band coefficients of the 2j+3-term relation `I_j·P̂_n = Σ β_{n,l} P̂_{n+l}`
/// at row index `n` (shifts confined to |l| ≤ j+1; at j = 0 this is the
/// classical three-term recurrence).
pub fn recurrence_2j3(
    spec: &XopSpec,
    mult: &Poly,
    n: usize,
) -> Result<Vec<(i64, ExactScalar)>, Error> {
    let band = spec.j() as i64 + 1;
    let context = format!("2j+3-term relation for {} at index {n}", spec.label());
    band_expand(spec, mult, n, band, &context)
}

/// Band coefficients of the older 4j+1-term relation
/// `q² · P̂_n = Σ γ_{n,l} P̂_{n+l}` at row index `n` (types I/II; shifts
/// confined to |l| ≤ 2j).
pub fn recurrence_4j1(spec: &XopSpec, n: usize) -> Result<Vec<(i64, ExactScalar)>, Error> {
    match spec.xtype() {
        Some(XType::I) | Some(XType::II) => {}
        _ => {
            return Err(Error::InvalidParameter {
                reason: format!(
                    "the 4j+1-term relation applies to types I and II only, not {}",
                    spec.label()
                ),
            })
        }
    }
    let band = 2 * spec.j() as i64;
    let seed_sq = spec.seed() * spec.seed();
    let context = format!("4j+1-term relation for {} at index {n}", spec.label());
    band_expand(spec, &seed_sq, n, band, &context)
}

/// Decomposition constants of the type-III closed multiplier inside its own
/// family: `I_j = α·P̂_{j+1} + β·P̂_0` with α forced to 1 by monicity.
pub fn lemma2_constants(spec: &XopSpec) -> Result<(ExactScalar, ExactScalar), Error> {
    if spec.xtype() != Some(XType::III) {
        return Err(Error::InvalidParameter {
            reason: format!(
                "the multiplier decomposition is type-III only, not {}",
                spec.label()
            ),
        });
    }
    let mult = Multiplier::compute(spec)?;
    let context = format!("degree-(j+1) multiplier decomposition for {}", spec.label());
    let expansion = expand_in_xop_basis(spec, mult.closed(), &context)?;
    let mut alpha = ExactScalar::zero();
    let mut beta = ExactScalar::zero();
    for (d, c) in &expansion {
        match d {
            d if *d == spec.j() + 1 => alpha = c.clone(),
            0 => beta = c.clone(),
            other => {
                return Err(Error::IdentityViolation {
                    context,
                    lhs: mult.closed().to_string(),
                    rhs: format!("α·(degree-{} member) + β·(degree-0 member)", spec.j() + 1),
                    difference: format!("stray coefficient {} at degree {other}", fmt_rat(c)),
                })
            }
        }
    }
    if !alpha.is_one() {
        return Err(Error::IdentityViolation {
            context,
            lhs: fmt_rat(&alpha),
            rhs: "1".into(),
            difference: fmt_rat(&(&alpha - &rat_int(1))),
        });
    }
    Ok((alpha, beta))
}

/// A serialized band-coefficient table for one member degree.
///
/// JSON is the format of record; CSV and LaTeX derive from the same data.
/// Zero coefficients are omitted; `coeffs` is ordered by descending shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub family: String,
    /// `None` for the classical degeneration (j = 0).
    pub xtype: Option<String>,
    pub j: u32,
    pub params: Vec<(String, String)>,
    pub n: u64,
    /// `Some("4j+1")` for the older relation; absent for 2j+3.
    pub kind: Option<String>,
    /// "raw", "closed", or "seed-squared".
    pub multiplier: String,
    /// Ascending coefficient strings of the multiplier polynomial.
    pub multiplier_poly: Vec<String>,
    /// (shift, coefficient) pairs, descending by shift.
    pub coeffs: Vec<(i64, String)>,
}

impl CoeffTable {
    /// The 2j+3-term table at row index `n` under `convention`.
    pub fn two_j_three(
        spec: &XopSpec,
        convention: Convention,
        n: usize,
    ) -> Result<CoeffTable, Error> {
        let mult = Multiplier::compute(spec)?;
        let poly = mult.poly(convention);
        let coeffs = recurrence_2j3(spec, poly, n)?;
        Ok(CoeffTable::assemble(
            spec,
            n,
            None,
            convention.to_string(),
            poly,
            coeffs,
        ))
    }

    /// The 4j+1-term table at row index `n` (seed-squared multiplier, types
    /// I/II).
    pub fn four_j_one(spec: &XopSpec, n: usize) -> Result<CoeffTable, Error> {
        let coeffs = recurrence_4j1(spec, n)?;
        let seed_sq = spec.seed() * spec.seed();
        Ok(CoeffTable::assemble(
            spec,
            n,
            Some("4j+1".to_string()),
            "seed-squared".to_string(),
            &seed_sq,
            coeffs,
        ))
    }

    fn assemble(
        spec: &XopSpec,
        n: usize,
        kind: Option<String>,
        multiplier: String,
        mult_poly: &Poly,
        coeffs: Vec<(i64, ExactScalar)>,
    ) -> CoeffTable {
        CoeffTable {
            family: spec.family().kind().to_string(),
            xtype: spec.xtype().map(|t| t.to_string()),
            j: spec.j() as u32,
            params: spec
                .family()
                .param_pairs()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            n: n as u64,
            kind,
            multiplier,
            multiplier_poly: mult_poly.to_string_vec(),
            coeffs: coeffs.into_iter().map(|(l, c)| (l, fmt_rat(&c))).collect(),
        }
    }

    /// JSON value with fixed key order (the byte-deterministic format of
    /// record).
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("family".into(), Value::String(self.family.clone()));
        if let Some(t) = &self.xtype {
            m.insert("type".into(), Value::String(t.clone()));
        }
        m.insert("j".into(), Value::Number(self.j.into()));
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), Value::String(v.clone()));
        }
        m.insert("params".into(), Value::Object(params));
        m.insert("n".into(), Value::Number(self.n.into()));
        if let Some(k) = &self.kind {
            m.insert("kind".into(), Value::String(k.clone()));
        }
        m.insert("multiplier".into(), Value::String(self.multiplier.clone()));
        m.insert(
            "multiplier_poly".into(),
            Value::Array(
                self.multiplier_poly
                    .iter()
                    .cloned()
                    .map(Value::String)
                    .collect(),
            ),
        );
        let mut coeffs = Map::new();
        for (l, c) in &self.coeffs {
            coeffs.insert(l.to_string(), Value::String(c.clone()));
        }
        m.insert("coeffs".into(), Value::Object(coeffs));
        Value::Object(m)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    /// Parses a table back from JSON, validating every rational.
    pub fn from_json(v: &Value) -> Result<CoeffTable, Error> {
        let obj = v.as_object().ok_or_else(|| Error::Config {
            reason: "coefficient table must be a JSON object".into(),
        })?;
        for key in obj.keys() {
            if !matches!(
                key.as_str(),
                "family"
                    | "type"
                    | "j"
                    | "params"
                    | "n"
                    | "kind"
                    | "multiplier"
                    | "multiplier_poly"
                    | "coeffs"
            ) {
                return Err(Error::Config {
                    reason: format!("unknown coefficient-table key {key:?}"),
                });
            }
        }
        let get = |k: &str| {
            obj.get(k).ok_or_else(|| Error::Config {
                reason: format!("coefficient table is missing {k:?}"),
            })
        };
        let str_field = |k: &str| -> Result<String, Error> {
            Ok(get(k)?
                .as_str()
                .ok_or_else(|| Error::Config {
                    reason: format!("{k:?} must be a string"),
                })?
                .to_string())
        };
        let family = str_field("family")?;
        let xtype = match obj.get("type") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => {
                return Err(Error::Config {
                    reason: "\"type\" must be a string".into(),
                })
            }
        };
        let j = get("j")?.as_u64().ok_or_else(|| Error::Config {
            reason: "\"j\" must be a nonnegative integer".into(),
        })? as u32;
        let params_obj = get("params")?.as_object().ok_or_else(|| Error::Config {
            reason: "\"params\" must be an object".into(),
        })?;
        let mut params = Vec::new();
        for (k, v) in params_obj {
            let s = v.as_str().ok_or_else(|| Error::Config {
                reason: format!("parameter {k:?} must be a string"),
            })?;
            parse_rat(s)?;
            params.push((k.clone(), s.to_string()));
        }
        let n = get("n")?.as_u64().ok_or_else(|| Error::Config {
            reason: "\"n\" must be a nonnegative integer".into(),
        })?;
        let kind = match obj.get("kind") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => {
                return Err(Error::Config {
                    reason: "\"kind\" must be a string".into(),
                })
            }
        };
        let multiplier = str_field("multiplier")?;
        let mp = get("multiplier_poly")?
            .as_array()
            .ok_or_else(|| Error::Config {
                reason: "\"multiplier_poly\" must be an array".into(),
            })?;
        let mut multiplier_poly = Vec::new();
        for v in mp {
            let s = v.as_str().ok_or_else(|| Error::Config {
                reason: "multiplier coefficients must be strings".into(),
            })?;
            parse_rat(s)?;
            multiplier_poly.push(s.to_string());
        }
        let coeffs_obj = get("coeffs")?.as_object().ok_or_else(|| Error::Config {
            reason: "\"coeffs\" must be an object".into(),
        })?;
        let mut coeffs = Vec::new();
        for (k, v) in coeffs_obj {
            let l: i64 = k.parse().map_err(|_| Error::Config {
                reason: format!("coefficient key {k:?} is not an integer shift"),
            })?;
            let s = v.as_str().ok_or_else(|| Error::Config {
                reason: format!("coefficient at shift {l} must be a string"),
            })?;
            parse_rat(s)?;
            coeffs.push((l, s.to_string()));
        }
        Ok(CoeffTable {
            family,
            xtype,
            j,
            params,
            n,
            kind,
            multiplier,
            multiplier_poly,
            coeffs,
        })
    }

    fn params_compact(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// CSV rendering: one row per (shift, coefficient), full metadata on
    /// every row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,type,j,params,n,kind,multiplier,l,coefficient\n");
        for (l, c) in &self.coeffs {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                self.family,
                self.xtype.as_deref().unwrap_or(""),
                self.j,
                self.params_compact(),
                self.n,
                self.kind.as_deref().unwrap_or(""),
                self.multiplier,
                l,
                c
            ));
        }
        out
    }

    /// LaTeX rendering: the relation written out with shift-ordered terms.
    pub fn to_latex(&self) -> String {
        let lhs = match self.kind.as_deref() {
            Some("4j+1") => format!("p_{{{}}}^{{\\,2}}\\,\\widehat P_{{{}}}", self.j, self.n),
            _ => format!("I_{{{}}}\\,\\widehat P_{{{}}}", self.j, self.n),
        };
        let mut rhs = String::new();
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            let sub = self.n as i64 + l;
            let (sign, mag) = match c.strip_prefix('-') {
                Some(rest) => ("-", rest),
                None => ("+", c.as_str()),
            };
            if i == 0 {
                if sign == "-" {
                    rhs.push_str("-");
                }
            } else {
                rhs.push_str(if sign == "-" { " - " } else { " + " });
            }
            if mag == "1" {
                rhs.push_str(&format!("\\widehat P_{{{sub}}}"));
            } else {
                rhs.push_str(&format!("{}\\,\\widehat P_{{{sub}}}", latex_rat(mag)));
            }
        }
        if self.coeffs.is_empty() {
            rhs.push('0');
        }
        format!("\\begin{{tabular}}{{rcl}}\n${lhs}$ & $=$ & ${rhs}$ \\\\\n\\end{{tabular}}\n")
    }
}

fn latex_rat(mag: &str) -> String {
    match mag.split_once('/') {
        Some((p, q)) => format!("\\tfrac{{{p}}}{{{q}}}"),
        None => mag.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use crate::xop::Strictness;

    fn lag(a: ExactScalar) -> FamilySpec {
        FamilySpec::Laguerre { a }
    }
    fn jac(a: ExactScalar, b: ExactScalar) -> FamilySpec {
        FamilySpec::Jacobi { a, b }
    }
    fn sp(f: FamilySpec, t: XType, j: usize) -> XopSpec {
        XopSpec::new(f, t, j, Strictness::Algebraic).unwrap()
    }

    #[test]
    fn pinned_laguerre_two_json_bytes() {
        let spec = sp(lag(rat_int(3)), XType::II, 1);
        let table = CoeffTable::two_j_three(&spec, Convention::Closed, 2).unwrap();
        assert_eq!(
            table.to_json_string(),
            r#"{"family":"laguerre","type":"II","j":1,"params":{"a":"3"},"n":2,"multiplier":"closed","multiplier_poly":["6","4","1"],"coeffs":{"2":"1","1":"20","0":"104","-1":"120","-2":"20"}}"#
        );
    }

    #[test]
    fn json_round_trip_is_identity() {
        let spec = sp(lag(rat(7, 3)), XType::I, 2);
        for d in [2usize, 3, 7] {
            let t = CoeffTable::two_j_three(&spec, Convention::Closed, d).unwrap();
            let back = CoeffTable::from_json(&t.to_json()).unwrap();
            assert_eq!(t, back);
            assert_eq!(t.to_json_string(), back.to_json_string());
        }
        let t4 = CoeffTable::four_j_one(&spec, 5).unwrap();
        let back = CoeffTable::from_json(&t4.to_json()).unwrap();
        assert_eq!(t4, back);
        assert!(t4.to_json_string().contains(r#""kind":"4j+1""#));
    }

    #[test]
    fn from_json_rejects_unknown_keys() {
        let spec = sp(lag(rat_int(3)), XType::II, 1);
        let mut v = CoeffTable::two_j_three(&spec, Convention::Raw, 2)
            .unwrap()
            .to_json();
        v.as_object_mut()
            .unwrap()
            .insert("comment".into(), Value::String("x".into()));
        assert!(matches!(
            CoeffTable::from_json(&v),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn hermite_band_pin() {
        let spec =
            XopSpec::new(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap();
        let t = CoeffTable::two_j_three(&spec, Convention::Closed, 4).unwrap();
        assert_eq!(
            t.coeffs,
            vec![
                (3, "1".to_string()),
                (1, "6".to_string()),
                (-1, "3".to_string())
            ]
        );
        // The shift −3 would land on the gap degree 1; it must be absent.
        assert!(t.coeffs.iter().all(|(l, _)| *l != -3));
    }

    #[test]
    fn jacobi_three_degree_zero_pin() {
        let a = rat(7, 3);
        let spec = sp(jac(a.clone(), a), XType::III, 1);
        let t = CoeffTable::two_j_three(&spec, Convention::Closed, 0).unwrap();
        assert_eq!(t.coeffs, vec![(2, "1".to_string())]);
    }

    #[test]
    fn classical_degeneration_reproduces_three_term() {
        let fams = [
            FamilySpec::Hermite,
            lag(rat(1, 2)),
            jac(rat(7, 3), rat(1, 2)),
        ];
        for fam in fams {
            let spec = XopSpec::classical(fam.clone()).unwrap();
            let mult = Multiplier::compute(&spec).unwrap();
            assert_eq!(mult.raw(), &Poly::x());
            assert!(mult.shift().is_zero());
            for n in 0..=12usize {
                let coeffs = recurrence_2j3(&spec, mult.raw(), n).unwrap();
                // x·P̂_n = P̂_{n+1} + A_n·P̂_n + B_n·P̂_{n−1}
                for (l, c) in &coeffs {
                    match l {
                        1 => assert!(c.is_one()),
                        0 => assert_eq!(c, &fam.offset(n).unwrap()),
                        -1 => assert_eq!(c, &fam.coupling(n).unwrap()),
                        _ => panic!("unexpected shift {l} in three-term recurrence"),
                    }
                }
                if n > 0 {
                    assert!(coeffs.iter().any(|(l, _)| *l == -1));
                }
            }
        }
    }

    #[test]
    fn multiplier_conventions_differ_by_constant() {
        let a = rat_int(1);
        let spec = sp(lag(a.clone()), XType::I, 1);
        let mult = Multiplier::compute(&spec).unwrap();
        // raw = x² + 2(a+1)x; closed = raw + a(a+1).
        assert_eq!(
            mult.raw(),
            &Poly::from_coeffs(vec![rat_int(0), rat_int(2) * (&a + rat_int(1)), rat_int(1)])
        );
        assert_eq!(mult.shift(), &(&a * &(&a + rat_int(1))));
        assert!(mult.has_printed_closed());
        // Jacobi type II has no printed closed form: closed aliases raw.
        let spec = sp(jac(rat(7, 3), rat(7, 3)), XType::II, 1);
        let mult = Multiplier::compute(&spec).unwrap();
        assert!(!mult.has_printed_closed());
        assert!(mult.shift().is_zero());
        assert_eq!(mult.raw(), mult.closed());
    }

    #[test]
    fn closed_multiplier_derivative_recovers_seed() {
        // In both conventions I_j′ = (j+1)·(monic seed).
        for spec in [
            sp(lag(rat(7, 3)), XType::I, 2),
            sp(lag(rat(7, 3)), XType::II, 2),
            sp(lag(rat(7, 3)), XType::III, 2),
            sp(jac(rat_int(4), rat_int(4)), XType::I, 1),
            sp(jac(rat_int(4), rat_int(4)), XType::III, 2),
            XopSpec::new(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap(),
        ] {
            let mult = Multiplier::compute(&spec).unwrap();
            let expected = spec.seed().scale(&rat_int(spec.j() as i64 + 1));
            assert_eq!(mult.raw().derivative(), expected, "{}", spec.label());
            assert_eq!(mult.closed().derivative(), expected, "{}", spec.label());
        }
    }

    #[test]
    fn lemma_two_constants() {
        let h = XopSpec::new(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap();
        let (alpha, beta) = lemma2_constants(&h).unwrap();
        assert!(alpha.is_one());
        assert!(beta.is_zero());

        let a = rat(7, 3);
        let jj = sp(jac(a.clone(), a.clone()), XType::III, 1);
        let (alpha, beta) = lemma2_constants(&jj).unwrap();
        assert!(alpha.is_one());
        assert!(beta.is_zero());

        let ll = sp(lag(a.clone()), XType::III, 2);
        let (alpha, _beta) = lemma2_constants(&ll).unwrap();
        assert!(alpha.is_one());

        // Not available off type III.
        assert!(lemma2_constants(&sp(lag(a), XType::I, 1)).is_err());
    }

    #[test]
    fn expansion_rejects_gap_leading_terms() {
        let spec = sp(lag(rat_int(1)), XType::I, 1);
        // Constants sit below the minimum degree j = 1.
        let err = expand_in_xop_basis(&spec, &Poly::one(), "test").unwrap_err();
        assert!(matches!(
            err,
            Error::UnrepresentableTarget { degree: 0, .. }
        ));
        // x + 3 is the degree-1 member: representable. x is not (remainder
        // constant −3 hits the gap).
        let x = Poly::x();
        let err = expand_in_xop_basis(&spec, &x, "test").unwrap_err();
        assert!(matches!(
            err,
            Error::UnrepresentableTarget { degree: 0, .. }
        ));
        let member = xop_poly(&spec, 1).unwrap();
        let exp = expand_in_xop_basis(&spec, &member, "test").unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[0].0, 1);
        assert!(exp[0].1.is_one());
    }

    #[test]
    fn four_j_one_band_holds() {
        for spec in [
            sp(lag(rat(7, 3)), XType::I, 1),
            sp(lag(rat(7, 3)), XType::II, 2),
            sp(jac(rat_int(4), rat_int(4)), XType::I, 1),
        ] {
            let band = 2 * spec.j() as i64;
            for n in 0..=6usize {
                let coeffs = recurrence_4j1(&spec, n).unwrap();
                assert!(
                    coeffs.iter().all(|(l, _)| l.abs() <= band),
                    "{}",
                    spec.label()
                );
                // Leading coefficient of the seed-squared expansion is 1.
                assert!(coeffs[0].1.is_one());
                assert_eq!(coeffs[0].0, band);
            }
        }
        // Type III is rejected.
        assert!(recurrence_4j1(&sp(lag(rat(7, 3)), XType::III, 1), 2).is_err());
    }

    #[test]
    fn csv_and_latex_renderings() {
        let spec = sp(lag(rat_int(3)), XType::II, 1);
        let t = CoeffTable::two_j_three(&spec, Convention::Closed, 2).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("family,type,j,params,n,kind,multiplier,l,coefficient\n"));
        assert!(csv.contains("laguerre,II,1,a=3,2,,closed,2,1\n"));
        assert!(csv.contains("laguerre,II,1,a=3,2,,closed,-2,20\n"));
        let latex = t.to_latex();
        assert!(latex.contains("I_{1}\\,\\widehat P_{2}"));
        assert!(latex.contains("\\widehat P_{4} + 20\\,\\widehat P_{3}"));
        assert!(
            latex.contains("104\\,\\widehat P_{2} + 120\\,\\widehat P_{1} + 20\\,\\widehat P_{0}")
        );

        // Fractions render with \tfrac; negative coefficients with a minus.
        let h = XopSpec::new(FamilySpec::Hermite, XType::III, 2, Strictness::Orthogonal).unwrap();
        let t = CoeffTable::two_j_three(&h, Convention::Closed, 5).unwrap();
        let latex = t.to_latex();
        assert!(latex.contains("\\tfrac") || latex.contains(" - "));
    }
}
