//! Arbitrary-precision Gauss quadrature and Gram-matrix orthogonality
//! checks.
//!
//! Every exceptional weight folds into `(shifted classical weight)/seed²`,
//! so orthogonality is cross-checked by Gauss rules of the shifted base
//! measure applied to the rational integrand `P̂_n·P̂_m/seed²`. Rules are
//! built from the exact monic recurrence coefficients: a double-precision
//! spectral bisection (Sturm counts on the shifted LDLᵀ pivots) seeds the
//! nodes, which are then polished by Newton iteration on the orthonormal
//! three-term recurrence in fixed-point big reals; Christoffel weights come
//! from the same recurrence. All weights are normalized to total mass 1 —
//! every check here compares normalized quantities, so the classical mass
//! constants (√π and friends) cancel throughout.
//!
//! Rational integrands are not integrated exactly by any fixed rule, so the
//! Gram matrix is recomputed on a doubling ladder of orders until two
//! consecutive normalized matrices agree to a requested tolerance; failure
//! to stabilize before the order cap is an explicit error, never a silent
//! best-effort number.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::classical::FamilySpec;
use crate::error::Error;
use crate::ratpoly::{rat, rat_int, to_f64, BigReal, ExactScalar, Poly};
use crate::xop::{weight_data, xop_poly, PiVariant, XopSpec};

/// Guard bits carried above the requested precision by all internal
/// arithmetic.
const GUARD: u32 = 64;

/// A Gauss rule for a classical base family, normalized to unit total mass.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub nodes: Vec<BigReal>,
    pub weights: Vec<BigReal>,
    pub order: u32,
    pub precision: u32,
}

type RuleKey = (String, String, u32, u32);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, Arc<QuadRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The order-`order` Gauss rule of `base` at `precision` bits, cached for
/// the lifetime of the process.
pub fn gauss_rule(base: &FamilySpec, order: u32, precision: u32) -> Result<Arc<QuadRule>, Error> {
    let key: RuleKey = (
        base.kind().to_string(),
        base.params_string(),
        order,
        precision,
    );
    if let Some(hit) = rule_cache().lock().expect("rule cache").get(&key) {
        return Ok(hit.clone());
    }
    let rule = Arc::new(build_rule(base, order, precision)?);
    rule_cache()
        .lock()
        .expect("rule cache")
        .insert(key, rule.clone());
    Ok(rule)
}

/// Orthonormal-recurrence data at working precision: offsets α_k and the
/// reciprocal square roots of the couplings.
struct OrthRecurrence {
    alpha: Vec<BigReal>,
    beta: Vec<BigReal>,
    inv_beta: Vec<BigReal>,
}

impl OrthRecurrence {
    fn build(base: &FamilySpec, order: u32, scale: u32) -> Result<OrthRecurrence, Error> {
        let n = order as usize;
        let mut alpha = Vec::with_capacity(n);
        for k in 0..n {
            alpha.push(BigReal::from_rational(&base.offset(k)?, scale));
        }
        // β_1..β_N: one past the matrix off-diagonal, because Newton
        // evaluates the order-N orthonormal polynomial itself.
        let mut beta = Vec::with_capacity(n);
        let mut inv_beta = Vec::with_capacity(n);
        for k in 1..=n {
            let b = BigReal::from_rational(&base.coupling(k)?, scale).sqrt();
            inv_beta.push(b.recip());
            beta.push(b);
        }
        Ok(OrthRecurrence {
            alpha,
            beta,
            inv_beta,
        })
    }

    /// Values of q_N and q_N′ at `x` (orthonormal normalization, q_0 = 1).
    fn eval_with_derivative(&self, x: &BigReal) -> (BigReal, BigReal) {
        let n = self.alpha.len();
        let scale = x.scale();
        let mut q_prev = BigReal::one(scale);
        let mut dq_prev = BigReal::zero(scale);
        if n == 0 {
            return (q_prev, dq_prev);
        }
        let t = x - &self.alpha[0];
        let mut q = &t * &self.inv_beta[0];
        let mut dq = self.inv_beta[0].clone();
        for k in 1..n {
            let t = x - &self.alpha[k];
            let q_next = &(&(&t * &q) - &(&self.beta[k - 1] * &q_prev)) * &self.inv_beta[k];
            let dq_next =
                &(&(&q + &(&t * &dq)) - &(&self.beta[k - 1] * &dq_prev)) * &self.inv_beta[k];
            q_prev = q;
            dq_prev = dq;
            q = q_next;
            dq = dq_next;
        }
        (q, dq)
    }

    /// Σ_{k<N} q_k(x)² — the reciprocal Christoffel weight at a node.
    fn sum_of_squares(&self, x: &BigReal) -> BigReal {
        let n = self.alpha.len();
        let scale = x.scale();
        let mut q_prev = BigReal::one(scale);
        let mut sum = &q_prev * &q_prev;
        if n == 1 {
            return sum;
        }
        let t = x - &self.alpha[0];
        let mut q = &t * &self.inv_beta[0];
        sum = &sum + &(&q * &q);
        for k in 1..n - 1 {
            let t = x - &self.alpha[k];
            let q_next = &(&(&t * &q) - &(&self.beta[k - 1] * &q_prev)) * &self.inv_beta[k];
            q_prev = q;
            q = q_next;
            sum = &sum + &(&q * &q);
        }
        sum
    }
}

/// Eigenvalue count below `x` of the symmetric tridiagonal Jacobi matrix,
/// via the signs of the shifted LDLᵀ pivots.
fn sturm_count_f64(alpha: &[f64], beta_sq: &[f64], x: f64) -> usize {
    let mut count = 0usize;
    let mut d = alpha[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..alpha.len() {
        let mut prev = d;
        if prev == 0.0 {
            prev = f64::MIN_POSITIVE;
        }
        d = alpha[i] - x - beta_sq[i - 1] / prev;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Double-precision node seeds: bisection on the Sturm count within the
/// Gershgorin enclosure.
fn f64_node_seeds(alpha: &[f64], beta_sq: &[f64]) -> Vec<f64> {
    let n = alpha.len();
    let beta: Vec<f64> = beta_sq.iter().map(|b| b.sqrt()).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { beta[i - 1] } else { 0.0 } + if i < n - 1 { beta[i] } else { 0.0 };
        lo = lo.min(alpha[i] - r);
        hi = hi.max(alpha[i] + r);
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..90 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if sturm_count_f64(alpha, beta_sq, m) >= k + 1 {
                b = m;
            } else {
                a = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

fn build_rule(base: &FamilySpec, order: u32, precision: u32) -> Result<QuadRule, Error> {
    if order == 0 {
        return Err(Error::InvalidParameter {
            reason: "quadrature order must be at least 1".into(),
        });
    }
    let n = order as usize;
    let scale = precision + GUARD;

    let mut alpha_f = Vec::with_capacity(n);
    let mut beta_sq_f = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        alpha_f.push(to_f64(&base.offset(k)?));
    }
    for k in 1..n {
        beta_sq_f.push(to_f64(&base.coupling(k)?));
    }
    let seeds = f64_node_seeds(&alpha_f, &beta_sq_f);

    let rec = OrthRecurrence::build(base, order, scale)?;

    // Newton: double the correct bits per step from the ~48 the f64 seed
    // carries.
    let mut iters = 0u32;
    let mut have = 48u64;
    while have < scale as u64 + 8 {
        have *= 2;
        iters += 1;
    }

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for seed in seeds {
        let mut x = BigReal::from_f64(seed, scale);
        for _ in 0..iters {
            let (q, dq) = rec.eval_with_derivative(&x);
            if q.is_zero() {
                break;
            }
            x = &x - &q.div(&dq);
        }
        let s = rec.sum_of_squares(&x);
        weights.push(s.recip().rescale(precision));
        nodes.push(x.rescale(precision));
    }
    for w in 1..nodes.len() {
        if nodes[w - 1] >= nodes[w] {
            return Err(Error::IdentityViolation {
                context: format!("Gauss node separation for {base} at order {order}"),
                lhs: nodes[w - 1].to_decimal_string(30),
                rhs: nodes[w].to_decimal_string(30),
                difference: "nodes must be strictly increasing".into(),
            });
        }
    }
    Ok(QuadRule {
        nodes,
        weights,
        order,
        precision,
    })
}

/// Exact normalized moments μ_k/μ_0 for k = 0..=kmax, via powers of the
/// monic Jacobi operator applied to the first coordinate vector.
pub fn exact_moments(base: &FamilySpec, kmax: usize) -> Result<Vec<ExactScalar>, Error> {
    let dim = kmax + 1;
    let mut alpha = Vec::with_capacity(dim);
    for i in 0..dim {
        alpha.push(base.offset(i)?);
    }
    let mut coup = vec![ExactScalar::zero()];
    for i in 1..dim {
        coup.push(base.coupling(i)?);
    }
    let mut v = vec![ExactScalar::zero(); dim];
    v[0] = ExactScalar::one();
    let mut out = vec![ExactScalar::one()];
    for _ in 1..=kmax {
        let mut w = vec![ExactScalar::zero(); dim];
        for i in 0..dim {
            let mut acc = &v[i] * &alpha[i];
            if i > 0 {
                acc = &acc + &v[i - 1];
            }
            if i + 1 < dim {
                acc = &acc + &(&v[i + 1] * &coup[i + 1]);
            }
            w[i] = acc;
        }
        v = w;
        out.push(v[0].clone());
    }
    Ok(out)
}

/// Options for the Gram-matrix convergence ladder.
#[derive(Debug, Clone, Copy)]
pub struct GramOptions {
    /// Binary precision of the reported values.
    pub precision: u32,
    /// First quadrature order of the doubling ladder.
    pub order_start: u32,
    /// Hard cap on the quadrature order.
    pub order_cap: u32,
    /// Largest member row index included in the matrix.
    pub nmax: u32,
    /// Stop when consecutive normalized matrices differ by less than
    /// 2^tol_log2 entrywise.
    pub tol_log2: i64,
}

impl Default for GramOptions {
    fn default() -> Self {
        GramOptions {
            precision: 256,
            order_start: 64,
            order_cap: 4096,
            nmax: 8,
            tol_log2: -44,
        }
    }
}

/// A converged Gram computation (raw working values).
#[derive(Debug, Clone)]
pub struct GramData {
    /// Row indices of the included members.
    pub rows: Vec<usize>,
    /// Member degrees behind the rows.
    pub degrees: Vec<usize>,
    /// Raw Gram matrix of the normalized measure.
    pub raw: Vec<Vec<BigReal>>,
    /// Diagonally normalized Gram matrix (unit diagonal).
    pub normalized: Vec<Vec<BigReal>>,
    /// Largest |off-diagonal| of the normalized matrix.
    pub offdiag_max: BigReal,
    pub final_order: u32,
    /// log2 of the last ladder delta (`None` when it was exactly zero).
    pub delta_log2: Option<i64>,
    pub variant: PiVariant,
    pub precision: u32,
}

impl GramData {
    /// Whether every normalized off-diagonal entry is below `threshold`.
    pub fn offdiag_below(&self, threshold: &ExactScalar) -> bool {
        let scale = self.precision;
        self.offdiag_max < BigReal::from_rational(threshold, scale)
    }
}

fn member_rows(spec: &XopSpec, nmax: u32) -> (Vec<usize>, Vec<usize>) {
    let set = spec.degree_set();
    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    for n in 0..=nmax as usize {
        if let Some(d) = set.index_to_degree(n) {
            rows.push(n);
            degrees.push(d);
        }
    }
    (rows, degrees)
}

fn check_integrable(base: &FamilySpec, context: &str) -> Result<(), Error> {
    let ok = match base {
        FamilySpec::Hermite => true,
        FamilySpec::Laguerre { a } => to_f64(&(a + rat_int(1))) > 0.0,
        FamilySpec::Jacobi { a, b } => {
            to_f64(&(a + rat_int(1))) > 0.0 && to_f64(&(b + rat_int(1))) > 0.0
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            reason: format!("{context}: folded base weight {base} is not integrable"),
        })
    }
}

fn compute_gram(
    spec: &XopSpec,
    base: &FamilySpec,
    degrees: &[usize],
    order: u32,
    precision: u32,
) -> Result<Vec<Vec<BigReal>>, Error> {
    let rule = gauss_rule(base, order, precision)?;
    let scale = precision + GUARD;
    let members: Vec<Poly> = degrees
        .iter()
        .map(|&d| xop_poly(spec, d))
        .collect::<Result<_, _>>()?;
    let m = members.len();
    let mut gram = vec![vec![BigReal::zero(scale); m]; m];
    let seed = spec.seed();
    let trivial_seed = seed.is_constant();
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        let x = x.rescale(scale);
        let w = w.rescale(scale);
        let vals: Vec<BigReal> = members.iter().map(|p| p.eval_real(&x)).collect();
        let factor = if trivial_seed {
            w
        } else {
            let q = seed.eval_real(&x);
            &w * &(&q * &q).recip()
        };
        for i in 0..m {
            let vi = &vals[i] * &factor;
            for (k, vk) in vals.iter().enumerate().take(i + 1) {
                let term = &vi * vk;
                gram[i][k] = &gram[i][k] + &term;
            }
        }
    }
    for i in 0..m {
        for k in 0..i {
            gram[k][i] = gram[i][k].clone();
        }
    }
    Ok(gram)
}

fn normalize_gram(gram: &[Vec<BigReal>]) -> Result<Vec<Vec<BigReal>>, Error> {
    let m = gram.len();
    let mut inv_sqrt = Vec::with_capacity(m);
    for (i, row) in gram.iter().enumerate() {
        let d = &row[i];
        if d.is_zero() || d.is_negative() {
            return Err(Error::IdentityViolation {
                context: "Gram normalization".into(),
                lhs: d.to_decimal_string(30),
                rhs: "a positive diagonal entry".into(),
                difference: format!("row {i}"),
            });
        }
        inv_sqrt.push(d.sqrt().recip());
    }
    let mut out = vec![vec![BigReal::zero(gram[0][0].scale()); m]; m];
    for i in 0..m {
        for k in 0..m {
            out[i][k] = &(&gram[i][k] * &inv_sqrt[i]) * &inv_sqrt[k];
        }
    }
    Ok(out)
}

fn max_entry_delta(a: &[Vec<BigReal>], b: &[Vec<BigReal>]) -> BigReal {
    let mut max = BigReal::zero(a[0][0].scale());
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (xa, xb) in ra.iter().zip(rb.iter()) {
            let d = (xa - xb).abs();
            if d > max {
                max = d;
            }
        }
    }
    max
}

/// Runs the Gram ladder for `spec` under the chosen type-III denominator
/// `variant`, doubling the quadrature order until two consecutive
/// normalized matrices agree to the tolerance.
pub fn gram_data(
    spec: &XopSpec,
    variant: PiVariant,
    opts: &GramOptions,
) -> Result<GramData, Error> {
    let weight = weight_data(spec, variant);
    check_integrable(&weight.base, &format!("Gram check for {}", spec.label()))?;
    let (rows, degrees) = member_rows(spec, opts.nmax);
    let mut prev: Option<(Vec<Vec<BigReal>>, Vec<Vec<BigReal>>)> = None;
    let mut order = opts.order_start.max(1);
    let mut last_delta: Option<BigReal> = None;
    while order <= opts.order_cap {
        let raw = compute_gram(spec, &weight.base, &degrees, order, opts.precision)?;
        let normalized = normalize_gram(&raw)?;
        if let Some((_, prev_norm)) = &prev {
            let delta = max_entry_delta(&normalized, prev_norm);
            let converged = delta.abs_lt_pow2(opts.tol_log2);
            last_delta = Some(delta);
            if converged {
                let mut offdiag = BigReal::zero(opts.precision);
                for (i, row) in normalized.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        if i != k {
                            let a = v.abs();
                            if a > offdiag {
                                offdiag = a;
                            }
                        }
                    }
                }
                let delta_log2 = last_delta.as_ref().and_then(|d| d.log2_abs());
                return Ok(GramData {
                    rows,
                    degrees,
                    raw,
                    normalized,
                    offdiag_max: offdiag,
                    final_order: order,
                    delta_log2,
                    variant,
                    precision: opts.precision,
                });
            }
        }
        prev = Some((raw, normalized));
        order = order.saturating_mul(2);
    }
    Err(Error::NonConvergence {
        order_cap: opts.order_cap,
        last_delta_log2: last_delta
            .as_ref()
            .and_then(|d| d.log2_abs())
            .unwrap_or(i64::MAX),
    })
}

/// A serialized Gram report (decimal strings at the stated precision).
#[derive(Debug, Clone)]
pub struct GramReport {
    pub family: String,
    pub xtype: Option<String>,
    pub j: u32,
    pub params: Vec<(String, String)>,
    pub variant: String,
    pub precision: u32,
    pub final_order: u32,
    pub rows: Vec<u64>,
    pub degrees: Vec<u64>,
    pub offdiag_max: String,
    pub delta_log2: Option<i64>,
    pub matrix: Vec<Vec<String>>,
}

/// Digits kept in report decimal strings.
const REPORT_DIGITS: u32 = 40;

/// Renders the serializable report for already-computed Gram data.
pub fn report_from_data(spec: &XopSpec, data: &GramData) -> GramReport {
    GramReport {
        family: spec.family().kind().to_string(),
        xtype: spec.xtype().map(|t| t.to_string()),
        j: spec.j() as u32,
        params: spec
            .family()
            .param_pairs()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        variant: variant_name(data.variant).to_string(),
        precision: data.precision,
        final_order: data.final_order,
        rows: data.rows.iter().map(|&n| n as u64).collect(),
        degrees: data.degrees.iter().map(|&d| d as u64).collect(),
        offdiag_max: data.offdiag_max.to_decimal_string(REPORT_DIGITS),
        delta_log2: data.delta_log2,
        matrix: data
            .normalized
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_decimal_string(REPORT_DIGITS))
                    .collect()
            })
            .collect(),
    }
}

/// Runs the Gram ladder and renders the serializable report.
pub fn gram(spec: &XopSpec, variant: PiVariant, opts: &GramOptions) -> Result<GramReport, Error> {
    let data = gram_data(spec, variant, opts)?;
    Ok(report_from_data(spec, &data))
}

pub fn variant_name(variant: PiVariant) -> &'static str {
    match variant {
        PiVariant::Adopted => "adopted",
        PiVariant::Printed => "printed",
    }
}

impl GramReport {
    /// JSON rendering with fixed key order.
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
        m.insert("variant".into(), Value::String(self.variant.clone()));
        m.insert("precision".into(), Value::Number(self.precision.into()));
        m.insert("final_order".into(), Value::Number(self.final_order.into()));
        m.insert(
            "rows".into(),
            Value::Array(self.rows.iter().map(|&n| Value::Number(n.into())).collect()),
        );
        m.insert(
            "degrees".into(),
            Value::Array(
                self.degrees
                    .iter()
                    .map(|&d| Value::Number(d.into()))
                    .collect(),
            ),
        );
        m.insert(
            "offdiag_max".into(),
            Value::String(self.offdiag_max.clone()),
        );
        match self.delta_log2 {
            Some(d) => m.insert("delta_log2".into(), Value::Number(d.into())),
            None => m.insert("delta_log2".into(), Value::Null),
        };
        m.insert(
            "matrix".into(),
            Value::Array(
                self.matrix
                    .iter()
                    .map(|row| Value::Array(row.iter().cloned().map(Value::String).collect()))
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

/// Outcome of the type-III Jacobi denominator arbitration: both candidate
/// weights are put through the same Gram ladder.
#[derive(Debug)]
pub struct PiArbiter {
    pub adopted: GramData,
    pub printed: Result<GramData, Error>,
    /// The variant (if any) whose normalized off-diagonals clear the
    /// orthogonality threshold.
    pub winner: Option<PiVariant>,
}

/// The orthogonality threshold used by the arbiter and the acceptance
/// checks: 1e−10.
pub fn orthogonality_threshold() -> ExactScalar {
    rat(1, 10_000_000_000)
}

/// Runs the Gram ladder under both type-III Jacobi denominator variants and
/// reports which one yields an orthogonal family.
pub fn arbitrate_pi(spec: &XopSpec, opts: &GramOptions) -> Result<PiArbiter, Error> {
    let adopted = gram_data(spec, PiVariant::Adopted, opts)?;
    let printed = gram_data(spec, PiVariant::Printed, opts);
    let threshold = orthogonality_threshold();
    let adopted_ok = adopted.offdiag_below(&threshold);
    let printed_ok = printed
        .as_ref()
        .map(|d| d.offdiag_below(&threshold))
        .unwrap_or(false);
    let winner = match (adopted_ok, printed_ok) {
        (true, false) => Some(PiVariant::Adopted),
        (false, true) => Some(PiVariant::Printed),
        _ => None,
    };
    Ok(PiArbiter {
        adopted,
        printed,
        winner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::XType;
    use crate::ratpoly::rat;
    use crate::xop::Strictness;

    fn close_to_int(x: &BigReal, v: i64, tol_log2: i64) -> bool {
        (x - &BigReal::from_int(v, x.scale())).abs_lt_pow2(tol_log2)
    }

    #[test]
    fn one_point_rules() {
        let rule = gauss_rule(&FamilySpec::Hermite, 1, 128).unwrap();
        assert!(rule.nodes[0].abs_lt_pow2(-120));
        assert!(close_to_int(&rule.weights[0], 1, -120));

        let rule = gauss_rule(&FamilySpec::Laguerre { a: rat_int(0) }, 1, 128).unwrap();
        assert!(close_to_int(&rule.nodes[0], 1, -120));
        assert!(close_to_int(&rule.weights[0], 1, -120));
    }

    #[test]
    fn moment_pins() {
        let h = exact_moments(&FamilySpec::Hermite, 4).unwrap();
        assert_eq!(h[1], rat_int(0));
        assert_eq!(h[2], rat(1, 2));
        assert_eq!(h[3], rat_int(0));
        assert_eq!(h[4], rat(3, 4));

        // Laguerre(0): μ_k/μ_0 = k!
        let l = exact_moments(&FamilySpec::Laguerre { a: rat_int(0) }, 5).unwrap();
        assert_eq!(l[3], rat_int(6));
        assert_eq!(l[5], rat_int(120));

        // Legendre: odd vanish, μ_2/μ_0 = 1/3, μ_4/μ_0 = 1/5.
        let j = exact_moments(
            &FamilySpec::Jacobi {
                a: rat_int(0),
                b: rat_int(0),
            },
            4,
        )
        .unwrap();
        assert_eq!(j[1], rat_int(0));
        assert_eq!(j[2], rat(1, 3));
        assert_eq!(j[4], rat(1, 5));
    }

    #[test]
    fn gauss_rules_match_exact_moments() {
        let precision = 192u32;
        let order = 12u32;
        let fams = [
            FamilySpec::Hermite,
            FamilySpec::Laguerre { a: rat(1, 2) },
            FamilySpec::Jacobi {
                a: rat(7, 3),
                b: rat(1, 2),
            },
        ];
        for fam in fams {
            let rule = gauss_rule(&fam, order, precision).unwrap();
            let moments = exact_moments(&fam, 2 * order as usize - 1).unwrap();
            let scale = precision + GUARD;
            // Accumulate Σ w_i x_i^k by repeated multiplication.
            let mut powers: Vec<BigReal> = rule.weights.iter().map(|w| w.rescale(scale)).collect();
            let nodes: Vec<BigReal> = rule.nodes.iter().map(|x| x.rescale(scale)).collect();
            for (k, mu) in moments.iter().enumerate() {
                let total = powers.iter().fold(BigReal::zero(scale), |acc, p| &acc + p);
                let expected = BigReal::from_rational(mu, scale);
                let diff = (&total - &expected).abs();
                // Relative to the moment size, allow rounding slack for
                // node error amplified through x^k.
                let bound = expected.abs().log2_abs().unwrap_or(0).max(0) - 135;
                assert!(
                    diff.abs_lt_pow2(bound),
                    "{fam} moment {k}: got {} want {}",
                    total.to_decimal_string(30),
                    expected.to_decimal_string(30)
                );
                for (p, x) in powers.iter_mut().zip(nodes.iter()) {
                    *p = &*p * x;
                }
            }
        }
    }

    #[test]
    fn classical_gram_is_diagonal_with_norm_ratios() {
        let fam = FamilySpec::Laguerre { a: rat(1, 2) };
        let spec = XopSpec::classical(fam.clone()).unwrap();
        let opts = GramOptions {
            precision: 160,
            order_start: 16,
            order_cap: 64,
            nmax: 4,
            tol_log2: -100,
        };
        let data = gram_data(&spec, PiVariant::Adopted, &opts).unwrap();
        assert!(data.offdiag_max.abs_lt_pow2(-100));
        for (i, &d) in data.degrees.iter().enumerate() {
            let expected =
                BigReal::from_rational(&fam.norm_ratio(d).unwrap(), data.raw[i][i].scale());
            let diff = (&data.raw[i][i] - &expected).abs();
            let bound = expected.log2_abs().unwrap_or(0) - 100;
            assert!(diff.abs_lt_pow2(bound), "degree {d}");
        }
    }

    #[test]
    fn jacobi_three_arbiter_prefers_adopted() {
        let a = rat(7, 3);
        let spec = XopSpec::new(
            FamilySpec::Jacobi { a: a.clone(), b: a },
            XType::III,
            2,
            Strictness::Orthogonal,
        )
        .unwrap();
        let opts = GramOptions {
            precision: 160,
            order_start: 32,
            order_cap: 1024,
            nmax: 5,
            tol_log2: -40,
        };
        let arbiter = arbitrate_pi(&spec, &opts).unwrap();
        assert_eq!(arbiter.winner, Some(PiVariant::Adopted));
        assert!(arbiter.adopted.offdiag_below(&orthogonality_threshold()));
        let printed = arbiter
            .printed
            .as_ref()
            .expect("printed variant integrable here");
        assert!(!printed.offdiag_below(&orthogonality_threshold()));
    }

    #[test]
    fn ladder_reports_nonconvergence_at_cap() {
        let spec = XopSpec::classical(FamilySpec::Hermite).unwrap();
        let opts = GramOptions {
            precision: 128,
            order_start: 8,
            order_cap: 8,
            nmax: 2,
            tol_log2: -40,
        };
        // A single rung can never certify convergence.
        assert!(matches!(
            gram_data(&spec, PiVariant::Adopted, &opts),
            Err(Error::NonConvergence { order_cap: 8, .. })
        ));
    }

    #[test]
    fn gram_report_serializes() {
        let spec = XopSpec::classical(FamilySpec::Hermite).unwrap();
        let opts = GramOptions {
            precision: 128,
            order_start: 8,
            order_cap: 64,
            nmax: 2,
            tol_log2: -80,
        };
        let report = gram(&spec, PiVariant::Adopted, &opts).unwrap();
        let v = report.to_json();
        assert_eq!(v["family"], "hermite");
        assert_eq!(v["variant"], "adopted");
        assert!(v.get("type").is_none());
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
        let s = v.to_string();
        assert!(s.contains("\"offdiag_max\""));
    }
}
