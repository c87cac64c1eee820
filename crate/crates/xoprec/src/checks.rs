//! Named verification checks: the vocabulary behind `verify` and `sweep`.
//!
//! Each check replays one class of identity over a parameter grid and
//! reports counted cases, counted failures, and the first counterexample in
//! human-readable form. The reference-table check compares every computed
//! band coefficient against independently transcribed closed-form
//! coefficient formulas in (n, a); the remaining exact checks replay
//! structural identities (band sparsity, multiplier decomposition, the
//! older seed-squared relation, classical degeneration, reflection
//! symmetry, and the operator cross-checks), and the quadrature check runs
//! the Gram ladders.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::One;
use serde_json::{Map, Value};

use crate::classical::{gauged_b, seed_eigenvalue_gauged, FamilySpec, XType};
use crate::error::Error;
use crate::quadcheck::{
    arbitrate_pi, gram_data, orthogonality_threshold, variant_name, GramOptions,
};
use crate::ratpoly::{pochhammer, rat, rat_int, BigReal, ExactScalar, Poly, RatFunc};
use crate::recurrence::{lemma2_constants, recurrence_2j3, recurrence_4j1, Multiplier};
use crate::xop::{apply_darboux, eigen_identity, xop_poly, PiVariant, Strictness, XopSpec};

/// The named checks, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckName {
    PaperTables,
    Sparsity,
    Lemma2,
    FourJOne,
    JZero,
    Gram,
    SelfAdjoint,
    Reflection,
    EigenCheck,
}

pub const ALL_CHECKS: [CheckName; 9] = [
    CheckName::PaperTables,
    CheckName::Sparsity,
    CheckName::Lemma2,
    CheckName::FourJOne,
    CheckName::JZero,
    CheckName::Gram,
    CheckName::SelfAdjoint,
    CheckName::Reflection,
    CheckName::EigenCheck,
];

/// The subset run by `verify --scope paper`: the displayed reference tables
/// (with the twisted-Hermite multiplier pinning) and the multiplier
/// decomposition constants.
pub const PAPER_CHECKS: [CheckName; 2] = [CheckName::PaperTables, CheckName::Lemma2];

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckName::PaperTables => "paper_tables",
            CheckName::Sparsity => "sparsity",
            CheckName::Lemma2 => "lemma2",
            CheckName::FourJOne => "fourj1",
            CheckName::JZero => "jzero",
            CheckName::Gram => "gram",
            CheckName::SelfAdjoint => "selfadjoint",
            CheckName::Reflection => "reflection",
            CheckName::EigenCheck => "eigencheck",
        })
    }
}

impl FromStr for CheckName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "paper_tables" => CheckName::PaperTables,
            "sparsity" => CheckName::Sparsity,
            "lemma2" => CheckName::Lemma2,
            "fourj1" => CheckName::FourJOne,
            "jzero" => CheckName::JZero,
            "gram" => CheckName::Gram,
            "selfadjoint" => CheckName::SelfAdjoint,
            "reflection" => CheckName::Reflection,
            "eigencheck" => CheckName::EigenCheck,
            other => {
                return Err(Error::Config {
                    reason: format!(
                        "unknown check {other:?}; valid names: paper_tables, sparsity, \
                         lemma2, fourj1, jzero, gram, selfadjoint, reflection, eigencheck"
                    ),
                })
            }
        })
    }
}

/// The grid a check run sweeps over: per-family parameter samples, the
/// transformation types, a j range, and the largest row index.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub hermite: bool,
    pub laguerre_samples: Vec<ExactScalar>,
    pub jacobi_samples: Vec<(ExactScalar, ExactScalar)>,
    pub types: Vec<XType>,
    pub j_min: usize,
    pub j_max: usize,
    /// Largest row index for the table-style checks.
    pub n_max: usize,
    pub gram: GramOptions,
}

/// The default parameter samples: {1/2, 1, 7/3, 4}.
pub fn default_samples() -> Vec<ExactScalar> {
    vec![rat(1, 2), rat_int(1), rat(7, 3), rat_int(4)]
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            hermite: true,
            laguerre_samples: default_samples(),
            jacobi_samples: default_samples()
                .into_iter()
                .map(|a| (a.clone(), a))
                .collect(),
            types: vec![XType::I, XType::II, XType::III],
            j_min: 1,
            j_max: 4,
            n_max: 16,
            gram: GramOptions::default(),
        }
    }
}

impl SweepGrid {
    /// Every constructible spec on this grid at the given strictness.
    /// Hermite contributes only even-j type-III entries.
    pub fn specs(&self, strictness: Strictness) -> Vec<XopSpec> {
        let mut out = Vec::new();
        for &t in &self.types {
            for j in self.j_min..=self.j_max {
                if self.hermite && t == XType::III && j % 2 == 0 {
                    if let Ok(s) = XopSpec::new(FamilySpec::Hermite, t, j, strictness) {
                        out.push(s);
                    }
                }
                for a in &self.laguerre_samples {
                    if let Ok(s) =
                        XopSpec::new(FamilySpec::Laguerre { a: a.clone() }, t, j, strictness)
                    {
                        out.push(s);
                    }
                }
                for (a, b) in &self.jacobi_samples {
                    if let Ok(s) = XopSpec::new(
                        FamilySpec::Jacobi {
                            a: a.clone(),
                            b: b.clone(),
                        },
                        t,
                        j,
                        strictness,
                    ) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Distinct Jacobi parameter values appearing in the samples.
    fn jacobi_values(&self) -> Vec<ExactScalar> {
        let mut out: Vec<ExactScalar> = Vec::new();
        for (a, b) in &self.jacobi_samples {
            if !out.contains(a) {
                out.push(a.clone());
            }
            if !out.contains(b) {
                out.push(b.clone());
            }
        }
        out
    }

    fn classical_specs(&self) -> Vec<XopSpec> {
        let mut fams = Vec::new();
        if self.hermite {
            fams.push(FamilySpec::Hermite);
        }
        for a in &self.laguerre_samples {
            fams.push(FamilySpec::Laguerre { a: a.clone() });
        }
        for (a, b) in &self.jacobi_samples {
            fams.push(FamilySpec::Jacobi {
                a: a.clone(),
                b: b.clone(),
            });
        }
        if !self.jacobi_samples.is_empty() {
            // Asymmetric coverage even when every sampled pair is symmetric.
            for fam in [
                FamilySpec::Jacobi {
                    a: rat_int(4),
                    b: rat(1, 2),
                },
                FamilySpec::Jacobi {
                    a: rat(7, 3),
                    b: rat_int(1),
                },
            ] {
                if !fams.contains(&fam) {
                    fams.push(fam);
                }
            }
        }
        fams.into_iter()
            .filter_map(|f| XopSpec::classical(f).ok())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        })
    }
}

/// Result of one named check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: CheckName,
    pub status: CheckStatus,
    pub cases: u64,
    pub failures: u64,
    /// Cells skipped with cause (e.g. a coefficient formula whose
    /// denominator vanishes at an isolated n).
    pub skipped_cases: u64,
    pub skip_reason: Option<String>,
    pub first_counterexample: Option<String>,
    pub notes: Vec<String>,
    pub millis: u128,
}

impl CheckOutcome {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), Value::String(self.name.to_string()));
        m.insert("status".into(), Value::String(self.status.to_string()));
        m.insert("cases".into(), Value::Number(self.cases.into()));
        m.insert("failures".into(), Value::Number(self.failures.into()));
        m.insert(
            "skipped_cases".into(),
            Value::Number(self.skipped_cases.into()),
        );
        match &self.skip_reason {
            Some(r) => m.insert("skip_reason".into(), Value::String(r.clone())),
            None => m.insert("skip_reason".into(), Value::Null),
        };
        match &self.first_counterexample {
            Some(c) => m.insert("first_counterexample".into(), Value::String(c.clone())),
            None => m.insert("first_counterexample".into(), Value::Null),
        };
        m.insert(
            "notes".into(),
            Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
        );
        m.insert("millis".into(), Value::Number((self.millis as u64).into()));
        Value::Object(m)
    }
}

/// A check outcome representing a check skipped before running.
pub fn skipped_outcome(name: CheckName, reason: &str) -> CheckOutcome {
    CheckOutcome {
        name,
        status: CheckStatus::Skip,
        cases: 0,
        failures: 0,
        skipped_cases: 0,
        skip_reason: Some(reason.to_string()),
        first_counterexample: None,
        notes: Vec::new(),
        millis: 0,
    }
}

struct Recorder {
    cases: u64,
    failures: u64,
    skipped: u64,
    first: Option<String>,
    notes: Vec<String>,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder {
            cases: 0,
            failures: 0,
            skipped: 0,
            first: None,
            notes: Vec::new(),
        }
    }

    fn pass(&mut self) {
        self.cases += 1;
    }

    fn fail(&mut self, desc: String) {
        self.cases += 1;
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(desc);
        }
    }

    fn check(&mut self, ok: bool, desc: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(desc());
        }
    }

    fn skip_cell(&mut self) {
        self.skipped += 1;
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self, name: CheckName, started: Instant) -> CheckOutcome {
        CheckOutcome {
            name,
            status: if self.failures == 0 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            cases: self.cases,
            failures: self.failures,
            skipped_cases: self.skipped,
            skip_reason: None,
            first_counterexample: self.first,
            notes: self.notes,
            millis: started.elapsed().as_millis(),
        }
    }
}

/// Runs one named check over the grid.
pub fn run_check(name: CheckName, grid: &SweepGrid) -> CheckOutcome {
    let started = Instant::now();
    let mut rec = Recorder::new();
    match name {
        CheckName::PaperTables => check_paper_tables(grid, &mut rec),
        CheckName::Sparsity => check_sparsity(grid, &mut rec),
        CheckName::Lemma2 => check_lemma2(grid, &mut rec),
        CheckName::FourJOne => check_fourj1(grid, &mut rec),
        CheckName::JZero => check_jzero(grid, &mut rec),
        CheckName::Gram => check_gram(grid, &mut rec),
        CheckName::SelfAdjoint => check_selfadjoint(grid, &mut rec),
        CheckName::Reflection => check_reflection(grid, &mut rec),
        CheckName::EigenCheck => check_eigen(grid, &mut rec),
    }
    rec.finish(name, started)
}

/// Runs `names` in order, emitting skip outcomes for entries of `skip`.
pub fn run_checks(names: &[CheckName], grid: &SweepGrid, skip: &[CheckName]) -> Vec<CheckOutcome> {
    names
        .iter()
        .map(|&name| {
            if skip.contains(&name) {
                skipped_outcome(name, "skipped by request")
            } else {
                run_check(name, grid)
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Reference tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    HIii2,
    LI1,
    LI2,
    LIi1,
    LIi2,
    LIii1,
    LIii2,
    JI1,
    JI2,
    JIii1,
    JIii2,
}

const RELATIONS: [Rel; 11] = [
    Rel::HIii2,
    Rel::LI1,
    Rel::LI2,
    Rel::LIi1,
    Rel::LIi2,
    Rel::LIii1,
    Rel::LIii2,
    Rel::JI1,
    Rel::JI2,
    Rel::JIii1,
    Rel::JIii2,
];

impl Rel {
    fn label(self) -> &'static str {
        match self {
            Rel::HIii2 => "hermite III j=2",
            Rel::LI1 => "laguerre I j=1",
            Rel::LI2 => "laguerre I j=2",
            Rel::LIi1 => "laguerre II j=1",
            Rel::LIi2 => "laguerre II j=2",
            Rel::LIii1 => "laguerre III j=1",
            Rel::LIii2 => "laguerre III j=2",
            Rel::JI1 => "jacobi I j=1",
            Rel::JI2 => "jacobi I j=2",
            Rel::JIii1 => "jacobi III j=1",
            Rel::JIii2 => "jacobi III j=2",
        }
    }

    fn j(self) -> usize {
        match self {
            Rel::HIii2 | Rel::LI2 | Rel::LIi2 | Rel::LIii2 | Rel::JI2 | Rel::JIii2 => 2,
            _ => 1,
        }
    }

    fn xtype(self) -> XType {
        match self {
            Rel::HIii2 | Rel::LIii1 | Rel::LIii2 | Rel::JIii1 | Rel::JIii2 => XType::III,
            Rel::LIi1 | Rel::LIi2 => XType::II,
            _ => XType::I,
        }
    }

    /// Valid specs on the grid's samples, paired with the parameter the
    /// coefficient formulas use (zero for Hermite).
    fn specs(self, grid: &SweepGrid) -> Vec<(XopSpec, ExactScalar)> {
        let t = self.xtype();
        let j = self.j();
        match self {
            Rel::HIii2 => XopSpec::new(FamilySpec::Hermite, t, j, Strictness::Algebraic)
                .ok()
                .map(|s| vec![(s, rat_int(0))])
                .unwrap_or_default(),
            Rel::LI1 | Rel::LI2 | Rel::LIi1 | Rel::LIi2 | Rel::LIii1 | Rel::LIii2 => grid
                .laguerre_samples
                .iter()
                .filter_map(|a| {
                    XopSpec::new(
                        FamilySpec::Laguerre { a: a.clone() },
                        t,
                        j,
                        Strictness::Algebraic,
                    )
                    .ok()
                    .map(|s| (s, a.clone()))
                })
                .collect(),
            // The displayed Jacobi relations are stated at b = a.
            Rel::JI1 | Rel::JI2 | Rel::JIii1 | Rel::JIii2 => grid
                .jacobi_samples
                .iter()
                .filter(|(a, b)| a == b)
                .filter_map(|(a, _)| {
                    XopSpec::new(
                        FamilySpec::Jacobi {
                            a: a.clone(),
                            b: a.clone(),
                        },
                        t,
                        j,
                        Strictness::Algebraic,
                    )
                    .ok()
                    .map(|s| (s, a.clone()))
                })
                .collect(),
        }
    }

    /// The displayed closed-form multiplier polynomial I_j (ascending
    /// coefficients as printed).
    fn multiplier(self, a: &ExactScalar) -> Poly {
        let k = rat_int;
        let one = ExactScalar::one();
        let c = |v: Vec<ExactScalar>| Poly::from_coeffs(v);
        let a1 = |v: i64| a + &k(v);
        match self {
            // x^3 + (3/2) x
            Rel::HIii2 => c(vec![k(0), rat(3, 2), k(0), one]),
            // x^2 + (2a+2) x + a(a+1)
            Rel::LI1 => c(vec![a * &a1(1), &k(2) * &a1(1), one]),
            // x^3 + 3(a+2) x^2 + 3(a+1)(a+2) x + a(a+1)(a+2)
            Rel::LI2 => c(vec![
                &(a * &a1(1)) * &a1(2),
                &(&k(3) * &a1(1)) * &a1(2),
                &k(3) * &a1(2),
                one,
            ]),
            // x^2 + (2a−2) x + a(a−1)
            Rel::LIi1 => c(vec![a * &a1(-1), &k(2) * &a1(-1), one]),
            // x^3 + 3(a−2) x^2 + 3(a−1)(a−2) x + a(a−1)(a−2)
            Rel::LIi2 => c(vec![
                &(a * &a1(-1)) * &a1(-2),
                &(&k(3) * &a1(-1)) * &a1(-2),
                &k(3) * &a1(-2),
                one,
            ]),
            // x^2 + (2−2a) x + a(a−1)
            Rel::LIii1 => c(vec![a * &a1(-1), &k(-2) * &a1(-1), one]),
            // x^3 − 3(a−2) x^2 + 3(a−1)(a−2) x − a(a−1)(a−2)
            Rel::LIii2 => c(vec![
                &(&(a * &a1(-1)) * &a1(-2)) * &k(-1),
                &(&k(3) * &a1(-1)) * &a1(-2),
                &k(-3) * &a1(-2),
                one,
            ]),
            // x^2 + 2a x + 2a² − 1
            Rel::JI1 => c(vec![&(&(&k(2) * a) * a) - &k(1), &k(2) * a, one]),
            // x^3 + (3a/2) x^2 + (a²−1) x + a(2a²−5)/6
            Rel::JI2 => c(vec![
                &(a * &(&(&(&k(2) * a) * a) - &k(5))) / &k(6),
                &(a * a) - &k(1),
                &rat(3, 2) * a,
                one,
            ]),
            // x^2 + 1/(2a−1)
            Rel::JIii1 => c(vec![&k(1) / &(&(&k(2) * a) - &k(1)), k(0), one]),
            // x^3 + 3x/(2a−3)
            Rel::JIii2 => c(vec![k(0), &k(3) / &(&(&k(2) * a) - &k(3)), k(0), one]),
        }
    }

    /// The printed coefficient formulas at row index n and parameter a, as
    /// (shift l, numerator, denominator) triples. A vanishing denominator
    /// marks a cell the printed formula does not define.
    fn cells(self, n: &ExactScalar, a: &ExactScalar) -> Vec<(i64, ExactScalar, ExactScalar)> {
        let k = rat_int;
        let one = ExactScalar::one();
        // Building blocks: n+v, n+a+v, cn·n + ca·a + c0, rising factorials.
        let nk = |v: i64| n + &k(v);
        let na = |v: i64| &(n + a) + &k(v);
        let lin = |cn: i64, ca: i64, c0: i64| &(&(n * &k(cn)) + &(a * &k(ca))) + &k(c0);
        let poch = |x: ExactScalar, m: u32| pochhammer(&x, m);
        let prod = |fs: &[ExactScalar]| fs.iter().fold(ExactScalar::one(), |acc, f| &acc * f);
        match self {
            Rel::HIii2 => vec![
                (3, one.clone(), one.clone()),
                (1, &rat(3, 2) * n, one.clone()),
                (-1, &rat(3, 4) * &(n * &nk(-3)), one.clone()),
                (-3, &rat(1, 8) * &prod(&[n.clone(), nk(-4), nk(-5)]), one),
            ],
            Rel::LI1 => vec![
                (2, one.clone(), one.clone()),
                (1, &k(4) * &na(2), one.clone()),
                (0, &k(2) * &prod(&[na(2), lin(3, 2, 2)]), one.clone()),
                (-1, &k(4) * &prod(&[na(2), na(0), n.clone()]), one.clone()),
                (-2, prod(&[na(2), na(-1), n.clone(), nk(-1)]), one),
            ],
            Rel::LI2 => vec![
                (3, one.clone(), one.clone()),
                (2, &k(6) * &na(3), one.clone()),
                (1, &k(3) * &prod(&[na(3), lin(5, 4, 8)]), one.clone()),
                (0, &k(4) * &prod(&[na(3), na(1), lin(5, 2, 4)]), one.clone()),
                (
                    -1,
                    &k(3) * &prod(&[na(3), na(0), lin(5, 4, 3), n.clone()]),
                    one.clone(),
                ),
                (
                    -2,
                    &k(6) * &prod(&[na(3), poch(na(-1), 2), poch(nk(-1), 2)]),
                    one.clone(),
                ),
                (-3, prod(&[na(3), poch(na(-2), 2), poch(nk(-2), 3)]), one),
            ],
            Rel::LIi1 => vec![
                (2, one.clone(), one.clone()),
                (1, &k(4) * &na(0), one.clone()),
                (0, &k(2) * &prod(&[na(-1), lin(3, 2, 1)]), one.clone()),
                (-1, &k(4) * &prod(&[na(-2), na(0), n.clone()]), one.clone()),
                (-2, prod(&[na(-3), na(0), n.clone(), nk(-1)]), one),
            ],
            Rel::LIi2 => vec![
                (3, one.clone(), one.clone()),
                (2, &k(6) * &na(0), one.clone()),
                (1, &k(3) * &prod(&[na(-1), lin(5, 4, 2)]), one.clone()),
                (
                    0,
                    &k(4) * &prod(&[na(-2), na(0), lin(5, 2, 1)]),
                    one.clone(),
                ),
                (
                    -1,
                    &k(3) * &prod(&[na(-3), na(0), lin(5, 4, -3), n.clone()]),
                    one.clone(),
                ),
                (
                    -2,
                    &k(6) * &prod(&[na(-4), poch(na(-1), 2), poch(nk(-1), 2)]),
                    one.clone(),
                ),
                (-3, prod(&[na(-5), poch(na(-1), 2), poch(nk(-2), 3)]), one),
            ],
            Rel::LIii1 => vec![
                (2, one.clone(), one.clone()),
                (1, &k(4) * n, one.clone()),
                (0, &k(2) * &prod(&[n.clone(), lin(3, 1, -4)]), one.clone()),
                (-1, &k(4) * &prod(&[n.clone(), nk(-2), na(-2)]), one.clone()),
                (-2, prod(&[n.clone(), nk(-3), na(-2), na(-3)]), one),
            ],
            Rel::LIii2 => vec![
                (3, one.clone(), one.clone()),
                (2, &k(6) * n, one.clone()),
                (1, &k(3) * &prod(&[n.clone(), lin(5, 1, -7)]), one.clone()),
                (
                    0,
                    &k(4) * &prod(&[n.clone(), nk(-2), lin(5, 3, -11)]),
                    one.clone(),
                ),
                (
                    -1,
                    &k(3) * &prod(&[n.clone(), nk(-3), na(-3), lin(5, 1, -12)]),
                    one.clone(),
                ),
                (
                    -2,
                    &k(6) * &prod(&[n.clone(), poch(nk(-4), 2), poch(na(-4), 2)]),
                    one.clone(),
                ),
                (
                    -3,
                    prod(&[n.clone(), poch(nk(-5), 2), poch(na(-5), 3)]),
                    one,
                ),
            ],
            Rel::JI1 => {
                // 4a² − 1 and 2n + 2a + v.
                let q = &(&(&k(4) * a) * a) - &k(1);
                let w = |v: i64| lin(2, 2, v);
                vec![
                    (2, one.clone(), one.clone()),
                    (1, &k(2) * a, one.clone()),
                    (
                        0,
                        &k(2) * &prod(&[q.clone(), na(-1), na(2)]),
                        &w(-1) * &w(3),
                    ),
                    (
                        -1,
                        &k(8)
                            * &prod(&[
                                a.clone(),
                                &(&na(0) * &na(0)) - &k(4),
                                n.clone(),
                                lin(1, 2, 0),
                            ]),
                        &poch(w(-2), 2) * &poch(w(1), 2),
                    ),
                    (
                        -2,
                        &k(4) * &prod(&[na(-3), na(2), poch(nk(-1), 2), poch(lin(1, 2, -1), 2)]),
                        &poch(w(-3), 3) * &poch(w(-1), 3),
                    ),
                ]
            }
            Rel::JI2 => {
                let q = &(&(&k(4) * a) * a) - &k(1);
                let w = |v: i64| lin(2, 2, v);
                vec![
                    (3, one.clone(), one.clone()),
                    (2, &rat(3, 2) * a, one.clone()),
                    (1, prod(&[q.clone(), na(3), na(-1)]), &w(-1) * &w(5)),
                    (
                        0,
                        prod(&[a.clone(), q.clone(), na(3), na(-2)]),
                        &k(3) * &(&w(-1) * &w(3)),
                    ),
                    (
                        // The denominator offsets here are the consecutive
                        // odd ones (−3, −1, +1, +3); the +1 factor is
                        // pinned by an independent quadrature projection of
                        // the relation onto the row-0 member.
                        -1,
                        prod(&[q.clone(), na(3), na(-3), n.clone(), lin(1, 2, 0)]),
                        prod(&[w(-1), w(1), w(-3), w(3)]),
                    ),
                    (
                        -2,
                        &k(6)
                            * &prod(&[
                                a.clone(),
                                na(3),
                                na(-4),
                                poch(nk(-1), 2),
                                poch(lin(1, 2, -1), 2),
                            ]),
                        prod(&[w(-1), w(-1), poch(w(-4), 2), poch(w(1), 2)]),
                    ),
                    (
                        -3,
                        &k(4) * &prod(&[na(3), na(-5), poch(nk(-2), 3), poch(lin(1, 2, -2), 3)]),
                        prod(&[w(-1), w(-3), poch(w(-5), 3), poch(w(-1), 3)]),
                    ),
                ]
            }
            Rel::JIii1 => {
                let w = |v: i64| lin(2, 2, v);
                let a2 = |v: i64| &(&k(2) * a) + &k(v);
                vec![
                    (2, one.clone(), one.clone()),
                    (
                        0,
                        &k(2) * &prod(&[a2(1), n.clone(), lin(1, 2, -3)]),
                        prod(&[a2(-1), w(-5), w(-1)]),
                    ),
                    (
                        -2,
                        prod(&[n.clone(), nk(-3), lin(1, 2, -5), lin(1, 2, -2)]),
                        &k(8) * &(&w(-5) * &poch(&na(0) + &rat(-7, 2), 3)),
                    ),
                ]
            }
            Rel::JIii2 => {
                let w = |v: i64| lin(2, 2, v);
                let a2 = |v: i64| &(&k(2) * a) + &k(v);
                vec![
                    (3, one.clone(), one.clone()),
                    (
                        1,
                        &k(3) * &prod(&[a2(1), n.clone(), lin(1, 2, -4)]),
                        prod(&[a2(-3), w(-1), w(-7)]),
                    ),
                    (
                        -1,
                        &k(3) * &prod(&[a2(1), n.clone(), nk(-3), lin(1, 2, -3), lin(1, 2, -6)]),
                        &k(16) * &(&a2(-3) * &poch(&na(0) + &rat(-9, 2), 4)),
                    ),
                    (
                        -3,
                        prod(&[
                            n.clone(),
                            nk(-4),
                            nk(-5),
                            lin(1, 2, -8),
                            poch(lin(1, 2, -4), 2),
                        ]),
                        &k(64)
                            * &(&poch(&na(0) + &rat(-9, 2), 2) * &poch(&na(0) + &rat(-11, 2), 4)),
                    ),
                ]
            }
        }
    }
}

fn check_paper_tables(grid: &SweepGrid, rec: &mut Recorder) {
    let zero = rat_int(0);
    for rel in RELATIONS {
        for (spec, a) in rel.specs(grid) {
            let mult = match Multiplier::compute(&spec) {
                Ok(m) => m,
                Err(e) => {
                    rec.fail(format!("{}: multiplier: {e}", rel.label()));
                    continue;
                }
            };
            rec.check(mult.closed() == &rel.multiplier(&a), || {
                format!(
                    "{} (a={a}): closed multiplier {} differs from the displayed form {}",
                    rel.label(),
                    mult.closed(),
                    rel.multiplier(&a)
                )
            });
            let set = spec.degree_set();
            for row in 0..=grid.n_max {
                if set.index_to_degree(row).is_none() {
                    continue;
                }
                let computed = match recurrence_2j3(&spec, mult.closed(), row) {
                    Ok(cs) => cs,
                    Err(e) => {
                        rec.fail(format!("{} (a={a}) row {row}: {e}", rel.label()));
                        continue;
                    }
                };
                let nrat = rat_int(row as i64);
                let mut defined: Vec<(i64, ExactScalar)> = Vec::new();
                let mut indeterminate = false;
                for (l, num, den) in rel.cells(&nrat, &a) {
                    if den == zero {
                        if num == zero {
                            // 0/0 cell: the displayed formula does not define
                            // a value at this isolated n; count the cell as
                            // skipped and fall back to a per-cell comparison.
                            rec.skip_cell();
                            indeterminate = true;
                        } else {
                            rec.fail(format!(
                                "{} (a={a}) row {row} shift {l}: formula denominator \
                                 vanishes with nonzero numerator {num}",
                                rel.label()
                            ));
                            indeterminate = true;
                        }
                        continue;
                    }
                    defined.push((l, &num / &den));
                }
                if indeterminate {
                    // Compare only the cells the formulas define.
                    let computed_at = |l: i64| {
                        computed
                            .iter()
                            .find(|(s, _)| *s == l)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(|| rat_int(0))
                    };
                    for (l, v) in defined {
                        rec.check(computed_at(l) == v, || {
                            format!(
                                "{} (a={a}) row {row} shift {l}: computed {} vs \
                                 displayed {}",
                                rel.label(),
                                computed_at(l),
                                v
                            )
                        });
                    }
                    continue;
                }
                // Fully defined row: the displayed nonzero cells must match
                // the computed band exactly (absent shifts must be zero).
                let mut expected: Vec<(i64, ExactScalar)> =
                    defined.into_iter().filter(|(_, v)| v != &zero).collect();
                expected.sort_by_key(|(l, _)| -l);
                rec.check(expected == computed, || {
                    format!(
                        "{} (a={a}) row {row}: computed {:?} vs displayed {:?}",
                        rel.label(),
                        fmt_coeffs(&computed),
                        fmt_coeffs(&expected)
                    )
                });
            }
        }
    }
}

fn fmt_coeffs(cs: &[(i64, ExactScalar)]) -> Vec<String> {
    cs.iter().map(|(l, c)| format!("{l}:{c}")).collect()
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

fn check_sparsity(grid: &SweepGrid, rec: &mut Recorder) {
    for spec in grid.specs(Strictness::Algebraic) {
        let mult = match Multiplier::compute(&spec) {
            Ok(m) => m,
            Err(e) => {
                rec.fail(format!("{}: multiplier: {e}", spec.label()));
                continue;
            }
        };
        let set = spec.degree_set();
        for row in 0..=grid.n_max {
            if set.index_to_degree(row).is_none() {
                // Gap rows must be refused, not silently expanded.
                rec.check(recurrence_2j3(&spec, mult.closed(), row).is_err(), || {
                    format!("{} row {row}: gap row was not rejected", spec.label())
                });
                continue;
            }
            match recurrence_2j3(&spec, mult.closed(), row) {
                Ok(_) => rec.pass(),
                Err(e) => rec.fail(format!("{} row {row}: {e}", spec.label())),
            }
        }
    }
}

fn check_lemma2(grid: &SweepGrid, rec: &mut Recorder) {
    for spec in grid.specs(Strictness::Algebraic) {
        if spec.xtype() != Some(XType::III) {
            continue;
        }
        let constants = lemma2_constants(&spec);
        let (alpha, beta) = match constants {
            Ok(c) => c,
            Err(e) => {
                rec.fail(format!("{}: {e}", spec.label()));
                continue;
            }
        };
        rec.check(alpha == ExactScalar::one(), || {
            format!(
                "{}: leading decomposition constant is {} instead of 1",
                spec.label(),
                alpha
            )
        });
        // Rebuild the decomposition from the recovered constants and compare
        // against the closed multiplier as full polynomials.
        let pieces = (
            Multiplier::compute(&spec),
            xop_poly(&spec, spec.j() + 1),
            xop_poly(&spec, 0),
        );
        match pieces {
            (Ok(mult), Ok(top), Ok(unit)) => {
                let recombined = &top.scale(&alpha) + &unit.scale(&beta);
                rec.check(&recombined == mult.closed(), || {
                    format!(
                        "{}: decomposition {} + {}·(degree-0 member) does not rebuild \
                         the closed multiplier {}",
                        spec.label(),
                        top,
                        beta,
                        mult.closed()
                    )
                });
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                rec.fail(format!("{}: {e}", spec.label()))
            }
        }
    }
}

fn check_fourj1(grid: &SweepGrid, rec: &mut Recorder) {
    let j_cap = grid.j_max.min(3);
    for spec in grid.specs(Strictness::Algebraic) {
        match spec.xtype() {
            Some(XType::I) | Some(XType::II) => {}
            _ => continue,
        }
        if spec.j() > j_cap {
            continue;
        }
        for row in 0..=grid.n_max.min(12) {
            match recurrence_4j1(&spec, row) {
                Ok(coeffs) => {
                    let band = 2 * spec.j() as i64;
                    let top_ok = coeffs.first().map(|(l, c)| *l == band && c.is_one());
                    rec.check(top_ok == Some(true), || {
                        format!(
                            "{} row {row}: seed-squared expansion top term is not \
                             monic at shift {band}",
                            spec.label()
                        )
                    });
                }
                Err(e) => rec.fail(format!("{} row {row}: {e}", spec.label())),
            }
        }
    }
}

fn check_jzero(grid: &SweepGrid, rec: &mut Recorder) {
    let zero = rat_int(0);
    for spec in grid.classical_specs() {
        let mult = match Multiplier::compute(&spec) {
            Ok(m) => m,
            Err(e) => {
                rec.fail(format!("{}: multiplier: {e}", spec.label()));
                continue;
            }
        };
        let fam = spec.family().clone();
        for n in 0..=grid.n_max {
            let computed = match recurrence_2j3(&spec, mult.closed(), n) {
                Ok(cs) => cs,
                Err(e) => {
                    rec.fail(format!("{} row {n}: {e}", spec.label()));
                    continue;
                }
            };
            let mut expected = vec![(1i64, ExactScalar::one())];
            match fam.offset(n) {
                Ok(o) => {
                    if o != zero {
                        expected.push((0, o));
                    }
                }
                Err(e) => {
                    rec.fail(format!("{} row {n}: offset: {e}", spec.label()));
                    continue;
                }
            }
            if n > 0 {
                match fam.coupling(n) {
                    Ok(c) => {
                        if c != zero {
                            expected.push((-1, c));
                        }
                    }
                    Err(e) => {
                        rec.fail(format!("{} row {n}: coupling: {e}", spec.label()));
                        continue;
                    }
                }
            }
            rec.check(expected == computed, || {
                format!(
                    "{} row {n}: trivial-seed band {:?} differs from the three-term \
                     coefficients {:?}",
                    spec.label(),
                    fmt_coeffs(&computed),
                    fmt_coeffs(&expected)
                )
            });
        }
    }
}

fn sign_pow(k: i64) -> ExactScalar {
    if k.rem_euclid(2) == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

fn check_reflection(grid: &SweepGrid, rec: &mut Recorder) {
    let values = grid.jacobi_values();
    if values.is_empty() {
        return;
    }
    let j_cap = grid.j_max.min(2);
    let minus_one = rat_int(-1);
    let zero_s = rat_int(0);
    for j in grid.j_min..=j_cap {
        for a in &values {
            for b in &values {
                let two = XopSpec::new(
                    FamilySpec::Jacobi {
                        a: a.clone(),
                        b: b.clone(),
                    },
                    XType::II,
                    j,
                    Strictness::Algebraic,
                );
                let one = XopSpec::new(
                    FamilySpec::Jacobi {
                        a: b.clone(),
                        b: a.clone(),
                    },
                    XType::I,
                    j,
                    Strictness::Algebraic,
                );
                let (Ok(spec2), Ok(spec1)) = (two, one) else {
                    continue;
                };
                let m1 = match Multiplier::compute(&spec1) {
                    Ok(m) => m,
                    Err(e) => {
                        rec.fail(format!("{}: multiplier: {e}", spec1.label()));
                        continue;
                    }
                };
                let m2 = match Multiplier::compute(&spec2) {
                    Ok(m) => m,
                    Err(e) => {
                        rec.fail(format!("{}: multiplier: {e}", spec2.label()));
                        continue;
                    }
                };
                for row in 0..=8usize {
                    let d = row + j;
                    // Members: the type-II member is the reflected type-I
                    // member with parameters swapped, up to the monic sign.
                    let p2 = xop_poly(&spec2, d);
                    let p1 =
                        xop_poly(&spec1, d).and_then(|p| p.compose_affine(&minus_one, &zero_s));
                    match (p2, p1) {
                        (Ok(p2), Ok(p1r)) => {
                            let expected = p1r.scale(&sign_pow(d as i64));
                            rec.check(p2 == expected, || {
                                format!(
                                    "reflection member mismatch at {} degree {d}",
                                    spec2.label()
                                )
                            });
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            rec.fail(format!("{} degree {d}: {e}", spec2.label()))
                        }
                    }
                    // Raw-convention band coefficients pick up (−1)^{j+l+1}.
                    let t2 = recurrence_2j3(&spec2, m2.raw(), row);
                    let t1 = recurrence_2j3(&spec1, m1.raw(), row);
                    match (t2, t1) {
                        (Ok(t2), Ok(t1)) => {
                            let expected: Vec<(i64, ExactScalar)> = t1
                                .into_iter()
                                .map(|(l, c)| (l, &c * &sign_pow(j as i64 + l + 1)))
                                .filter(|(_, c)| c != &zero_s)
                                .collect();
                            rec.check(expected == t2, || {
                                format!("reflection band mismatch at {} row {row}", spec2.label())
                            });
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            rec.fail(format!("{} row {row}: {e}", spec2.label()))
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Operator cross-checks
// ---------------------------------------------------------------------------

fn classical_families(grid: &SweepGrid) -> Vec<FamilySpec> {
    let mut fams = Vec::new();
    if grid.hermite {
        fams.push(FamilySpec::Hermite);
    }
    for a in &grid.laguerre_samples {
        fams.push(FamilySpec::Laguerre { a: a.clone() });
    }
    for (a, b) in &grid.jacobi_samples {
        fams.push(FamilySpec::Jacobi {
            a: a.clone(),
            b: b.clone(),
        });
    }
    fams
}

fn check_eigen(grid: &SweepGrid, rec: &mut Recorder) {
    // Rodrigues and recurrence constructions agree.
    for fam in classical_families(grid) {
        for n in 0..=10usize {
            match (fam.monic_by_recurrence(n), fam.monic_by_rodrigues(n)) {
                (Ok(p), Ok(q)) => rec.check(p == q, || {
                    format!("{fam}: recurrence and Rodrigues constructions differ at degree {n}")
                }),
                (Err(e), _) | (_, Err(e)) => rec.fail(format!("{fam} degree {n}: {e}")),
            }
        }
        // Pearson: the weight's logarithmic derivative matches the
        // independently written density, and A·(w′/w) + A′ = B.
        let a_poly = fam.coeff_a();
        let b_poly = fam.coeff_b();
        let wld = fam.weight_log_derivative();
        let direct = match &fam {
            FamilySpec::Hermite => {
                RatFunc::from_poly(Poly::from_coeffs(vec![rat_int(0), rat_int(-2)]))
            }
            FamilySpec::Laguerre { a } => {
                RatFunc::new(Poly::from_coeffs(vec![a.clone(), rat_int(-1)]), Poly::x())
                    .expect("nonzero denominator")
            }
            FamilySpec::Jacobi { a, b } => RatFunc::new(
                Poly::from_coeffs(vec![a - b, a + b]),
                Poly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]),
            )
            .expect("nonzero denominator"),
        };
        rec.check(wld == direct, || {
            format!("{fam}: weight logarithmic derivative differs from the density form")
        });
        let lhs = &(&RatFunc::from_poly(a_poly.clone()) * &wld)
            + &RatFunc::from_poly(a_poly.derivative());
        rec.check(lhs == RatFunc::from_poly(b_poly), || {
            format!("{fam}: A·(w′/w) + A′ does not reduce to B")
        });
        // Derivative shift: the derivative of the degree-n monic member is
        // n times the degree-(n−1) member of the shifted family.
        let shifted = match &fam {
            FamilySpec::Hermite => FamilySpec::Hermite,
            FamilySpec::Laguerre { a } => FamilySpec::Laguerre { a: a + &rat_int(1) },
            FamilySpec::Jacobi { a, b } => FamilySpec::Jacobi {
                a: a + &rat_int(1),
                b: b + &rat_int(1),
            },
        };
        for n in 1..=10usize {
            match (fam.monic(n), shifted.monic(n - 1)) {
                (Ok(p), Ok(q)) => {
                    let expected = q.scale(&rat_int(n as i64));
                    rec.check(p.derivative() == expected, || {
                        format!("{fam}: derivative shift fails at degree {n}")
                    });
                }
                (Err(e), _) | (_, Err(e)) => rec.fail(format!("{fam} degree {n}: {e}")),
            }
        }
        // Bochner eigen-identity for the classical members.
        match XopSpec::classical(fam.clone()) {
            Ok(spec) => {
                for d in 0..=10usize {
                    match eigen_identity(&spec, d) {
                        Ok(()) => rec.pass(),
                        Err(e) => rec.fail(format!("{fam} degree {d}: {e}")),
                    }
                }
            }
            Err(e) => rec.fail(format!("{fam}: {e}")),
        }
    }

    // The direct construction agrees with the first-order operator it
    // abbreviates, and the seeds satisfy their gauged eigen-equations.
    for spec in grid.specs(Strictness::Algebraic) {
        let fam = spec.family().clone();
        let t = spec.xtype().expect("exceptional spec");
        let set = spec.degree_set();
        for d in set.members_upto(9) {
            let Some(target) = set.target_of(d) else {
                continue;
            };
            let target_poly = match fam.monic(target) {
                Ok(p) => p,
                Err(e) => {
                    rec.fail(format!("{} target {target}: {e}", spec.label()));
                    continue;
                }
            };
            match apply_darboux(&spec, &target_poly, &RatFunc::zero()) {
                Ok(raw) => match raw.monicized() {
                    Some((monic, _)) => match xop_poly(&spec, d) {
                        Ok(member) => rec.check(monic == member, || {
                            format!(
                                "{} degree {d}: direct construction differs from the \
                                 first-order operator",
                                spec.label()
                            )
                        }),
                        Err(e) => rec.fail(format!("{} degree {d}: {e}", spec.label())),
                    },
                    None => rec.fail(format!(
                        "{} degree {d}: first-order operator annihilated the target",
                        spec.label()
                    )),
                },
                Err(e) => rec.fail(format!("{} degree {d}: {e}", spec.label())),
            }
        }
        let seed = spec.seed();
        let a_poly = fam.coeff_a();
        match (gauged_b(&fam, t), seed_eigenvalue_gauged(&fam, t, spec.j())) {
            (Ok(bt), Ok(lam)) => {
                let lhs =
                    &(&a_poly * &seed.derivative().derivative()) + &(&bt * &seed.derivative());
                let rhs = seed.scale(&lam);
                rec.check(lhs == rhs, || {
                    format!(
                        "{}: seed eigen-equation fails under the gauged operator",
                        spec.label()
                    )
                });
            }
            (Err(e), _) | (_, Err(e)) => rec.fail(format!("{}: {e}", spec.label())),
        }
    }

    // Full eigen-identity for the transformed operator on a modest grid.
    for spec in grid.specs(Strictness::Algebraic) {
        if spec.j() > 2 {
            continue;
        }
        for d in spec.degree_set().members_upto(6) {
            match eigen_identity(&spec, d) {
                Ok(()) => rec.pass(),
                Err(e) => rec.fail(format!("{} degree {d}: {e}", spec.label())),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Quadrature checks
// ---------------------------------------------------------------------------

fn check_gram(grid: &SweepGrid, rec: &mut Recorder) {
    let threshold = orthogonality_threshold();
    let opts = grid.gram;

    // Classical anchors: one per family, orthogonality must be trivially
    // diagonal.
    let mut anchors = Vec::new();
    if grid.hermite {
        anchors.push(FamilySpec::Hermite);
    }
    if let Some(a) = grid.laguerre_samples.first() {
        anchors.push(FamilySpec::Laguerre { a: a.clone() });
    }
    if let Some((a, b)) = grid.jacobi_samples.first() {
        anchors.push(FamilySpec::Jacobi {
            a: a.clone(),
            b: b.clone(),
        });
    }
    for fam in anchors {
        match XopSpec::classical(fam.clone()) {
            Ok(spec) => run_gram_case(&spec, &opts, &threshold, rec),
            Err(e) => rec.fail(format!("{fam}: {e}")),
        }
    }

    // Every orthogonal spec on the grid.
    let specs = grid.specs(Strictness::Orthogonal);
    for spec in &specs {
        let is_jacobi_iii =
            matches!(spec.family(), FamilySpec::Jacobi { .. }) && spec.xtype() == Some(XType::III);
        if is_jacobi_iii {
            // Denominator arbitration: both candidate weights are run; the
            // adopted one must pass and the report records the winner.
            match arbitrate_pi(spec, &opts) {
                Ok(arb) => {
                    let adopted_ok = arb.adopted.offdiag_below(&threshold);
                    rec.check(adopted_ok && arb.winner == Some(PiVariant::Adopted), || {
                        format!(
                            "{}: adopted weight variant did not win the arbitration \
                             (winner: {:?})",
                            spec.label(),
                            arb.winner.map(variant_name)
                        )
                    });
                    let printed_desc = match &arb.printed {
                        Ok(d) => {
                            if d.offdiag_below(&threshold) {
                                "printed variant unexpectedly passes".to_string()
                            } else {
                                format!(
                                    "printed variant fails (max off-diagonal {})",
                                    d.offdiag_max.to_decimal_string(6)
                                )
                            }
                        }
                        Err(e) => format!("printed variant not checkable: {e}"),
                    };
                    rec.note(format!(
                        "{}: winner={}; adopted max off-diagonal {}; {}",
                        spec.label(),
                        arb.winner.map(variant_name).unwrap_or("none"),
                        arb.adopted.offdiag_max.to_decimal_string(6),
                        printed_desc
                    ));
                }
                Err(e) => rec.fail(format!("{}: arbitration: {e}", spec.label())),
            }
        } else {
            run_gram_case(spec, &opts, &threshold, rec);
        }
    }
}

/// Band self-adjointness surrogate: the weighted band coefficients must
/// pair up symmetrically, ĥ_{n+l}·β_{n,l} = ĥ_n·β_{n+l,−l}, to relative
/// 1e−8 for types I/II with j ≤ 2 and rows n ≤ 6.
fn check_selfadjoint(grid: &SweepGrid, rec: &mut Recorder) {
    let opts = grid.gram;
    let tol = rat(1, 100_000_000);
    for spec in &grid.specs(Strictness::Orthogonal) {
        match spec.xtype() {
            Some(XType::I) | Some(XType::II) => {}
            _ => continue,
        }
        if spec.j() > 2 {
            continue;
        }
        let mut o = opts;
        o.nmax = 9;
        let data = match gram_data(spec, PiVariant::Adopted, &o) {
            Ok(d) => d,
            Err(e) => {
                rec.fail(format!("{}: norm computation: {e}", spec.label()));
                continue;
            }
        };
        let mult = match Multiplier::compute(spec) {
            Ok(m) => m,
            Err(e) => {
                rec.fail(format!("{}: multiplier: {e}", spec.label()));
                continue;
            }
        };
        let mut tables: Vec<Option<Vec<(i64, ExactScalar)>>> = Vec::new();
        for row in 0..=9usize {
            tables.push(recurrence_2j3(spec, mult.closed(), row).ok());
        }
        let coeff_at = |row: usize, l: i64| -> ExactScalar {
            tables[row]
                .as_deref()
                .and_then(|cs| cs.iter().find(|(s, _)| *s == l))
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| rat_int(0))
        };
        let scale = data.precision;
        let tol_real = BigReal::from_rational(&tol, scale);
        for n in 0..=6usize {
            for l in 1..=(spec.j() as i64 + 1) {
                let m = n + l as usize;
                if m >= data.rows.len() {
                    continue;
                }
                let beta_up = coeff_at(n, l);
                let beta_down = coeff_at(m, -l);
                let lhs = &data.raw[m][m] * &BigReal::from_rational(&beta_up, scale);
                let rhs = &data.raw[n][n] * &BigReal::from_rational(&beta_down, scale);
                let diff = (&lhs - &rhs).abs();
                let mag = if lhs.abs() > rhs.abs() {
                    lhs.abs()
                } else {
                    rhs.abs()
                };
                let bound = &mag * &tol_real;
                rec.check(diff <= bound, || {
                    format!(
                        "{} rows {n}↔{m}: weighted band coefficients disagree \
                         ({} vs {})",
                        spec.label(),
                        lhs.to_decimal_string(20),
                        rhs.to_decimal_string(20)
                    )
                });
            }
        }
    }
}

fn run_gram_case(spec: &XopSpec, opts: &GramOptions, threshold: &ExactScalar, rec: &mut Recorder) {
    match gram_data(spec, PiVariant::Adopted, opts) {
        Ok(data) => rec.check(data.offdiag_below(threshold), || {
            format!(
                "{}: max normalized off-diagonal {} is not below the orthogonality \
                 threshold",
                spec.label(),
                data.offdiag_max.to_decimal_string(15)
            )
        }),
        Err(e) => rec.fail(format!("{}: {e}", spec.label())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> SweepGrid {
        SweepGrid {
            j_max: 2,
            n_max: 6,
            laguerre_samples: vec![rat(1, 2), rat(7, 3)],
            jacobi_samples: vec![(rat(1, 2), rat(1, 2)), (rat(7, 3), rat(7, 3))],
            ..SweepGrid::default()
        }
    }

    #[test]
    fn check_names_round_trip() {
        for name in ALL_CHECKS {
            let s = name.to_string();
            assert_eq!(s.parse::<CheckName>().unwrap(), name);
        }
        assert!("bogus".parse::<CheckName>().is_err());
    }

    #[test]
    fn formula_cells_match_pinned_row() {
        // Independent transcription cross-check: laguerre II j=1, a=3,
        // row 2 must give 1, 20, 104, 120, 20 at shifts 2..−2.
        let n = rat_int(2);
        let a = rat_int(3);
        let cells = Rel::LIi1.cells(&n, &a);
        let values: Vec<(i64, ExactScalar)> = cells
            .into_iter()
            .map(|(l, num, den)| (l, &num / &den))
            .collect();
        assert_eq!(
            values,
            vec![
                (2, rat_int(1)),
                (1, rat_int(20)),
                (0, rat_int(104)),
                (-1, rat_int(120)),
                (-2, rat_int(20)),
            ]
        );
    }

    #[test]
    fn hermite_cells_match_displayed_band() {
        let n = rat_int(4);
        let a = rat_int(0);
        let values: Vec<(i64, ExactScalar)> = Rel::HIii2
            .cells(&n, &a)
            .into_iter()
            .map(|(l, num, den)| (l, &num / &den))
            .collect();
        assert_eq!(
            values,
            vec![
                (3, rat_int(1)),
                (1, rat_int(6)),
                (-1, rat_int(3)),
                (-3, rat_int(0))
            ]
        );
    }

    #[test]
    fn paper_tables_pass_on_small_grid() {
        let grid = small_grid();
        let out = run_check(CheckName::PaperTables, &grid);
        assert_eq!(
            out.status,
            CheckStatus::Pass,
            "{:?}",
            out.first_counterexample
        );
        assert!(out.cases > 50);
    }

    #[test]
    fn jzero_and_lemma2_pass_on_small_grid() {
        let grid = small_grid();
        let out = run_check(CheckName::JZero, &grid);
        assert_eq!(
            out.status,
            CheckStatus::Pass,
            "{:?}",
            out.first_counterexample
        );
        let out = run_check(CheckName::Lemma2, &grid);
        assert_eq!(
            out.status,
            CheckStatus::Pass,
            "{:?}",
            out.first_counterexample
        );
    }

    #[test]
    fn reflection_passes_on_small_grid() {
        let mut grid = small_grid();
        grid.hermite = false;
        grid.laguerre_samples.clear();
        let out = run_check(CheckName::Reflection, &grid);
        assert_eq!(
            out.status,
            CheckStatus::Pass,
            "{:?}",
            out.first_counterexample
        );
        assert!(out.cases > 0);
    }

    #[test]
    fn skip_outcome_serializes() {
        let out = skipped_outcome(CheckName::Gram, "skipped by request");
        let v = out.to_json();
        assert_eq!(v["name"], "gram");
        assert_eq!(v["status"], "skip");
        assert_eq!(v["skip_reason"], "skipped by request");
        assert_eq!(v["cases"], 0);
    }
}
