//! Python bindings for the xoprec core: spec validation, member polynomials,
//! band-coefficient tables, multiplier data, and exact evaluation.
//!
//! Exact rationals cross the boundary as strings in lowest terms, polynomials
//! as ascending coefficient-string lists, and tables as plain dictionaries
//! mirroring the CLI's JSON layout.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use xoprec::classical::{FamilySpec, XType};
use xoprec::ratpoly::{fmt_rat, parse_rat};
use xoprec::recurrence::{lemma2_constants, CoeffTable, Convention, Multiplier};
use xoprec::xop::{xop_poly, Strictness, XopSpec};
use xoprec::Error;

/// Parameter and configuration problems surface as ValueError; failures of
/// the mathematical machinery itself surface as RuntimeError.
fn to_py_err(e: Error) -> PyErr {
    match &e {
        Error::InvalidParameter { .. }
        | Error::NonexistentCombination { .. }
        | Error::SeedHasRootsInDomain { .. }
        | Error::DegenerateDivisor { .. }
        | Error::EigenvalueCollision { .. }
        | Error::Config { .. }
        | Error::Io { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn build_spec(
    family: &str,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
    orthogonal: bool,
) -> PyResult<XopSpec> {
    let fam = FamilySpec::from_strings(family, a, b).map_err(to_py_err)?;
    let strictness = if orthogonal {
        Strictness::Orthogonal
    } else {
        Strictness::Algebraic
    };
    match (xtype, j) {
        (None, None) => XopSpec::classical(fam).map_err(to_py_err),
        (Some(t), Some(j)) => {
            if j == 0 {
                return Err(PyValueError::new_err(
                    "j must be at least 1 (omit type and j for the classical family)",
                ));
            }
            let t: XType = t.parse().map_err(to_py_err)?;
            XopSpec::new(fam, t, j as usize, strictness).map_err(to_py_err)
        }
        _ => Err(PyValueError::new_err(
            "type and j must be given together (omit both for the classical family)",
        )),
    }
}

fn parse_convention(s: &str) -> PyResult<Convention> {
    s.parse().map_err(to_py_err)
}

/// Row index -> member degree, or a ValueError naming the excluded degree.
fn row_to_degree(spec: &XopSpec, n: usize) -> PyResult<usize> {
    spec.degree_set().index_to_degree(n).ok_or_else(|| {
        PyValueError::new_err(format!(
            "row {n} is an excluded (gap) degree of {}",
            spec.label()
        ))
    })
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(num) => {
            if let Some(u) = num.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else if let Some(i) = num.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                num.as_f64()
                    .unwrap_or(f64::NAN)
                    .into_pyobject(py)?
                    .into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, value_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// Validates a spec and returns its human-readable label.
///
/// With `orthogonal=True` the stricter construction is used: the seed must
/// also be nonvanishing on the closed orthogonality domain.
#[pyfunction]
#[pyo3(signature = (family, *, xtype=None, j=None, a=None, b=None, orthogonal=false))]
fn validate(
    family: &str,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
    orthogonal: bool,
) -> PyResult<String> {
    Ok(build_spec(family, xtype, j, a, b, orthogonal)?.label())
}

/// Degree of the member at row `n`, or None when `n` is an excluded (gap)
/// degree of a type-III family.
#[pyfunction]
#[pyo3(signature = (family, n, *, xtype=None, j=None, a=None, b=None))]
fn row_degree(
    family: &str,
    n: usize,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
) -> PyResult<Option<usize>> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    Ok(spec.degree_set().index_to_degree(n))
}

/// Ascending exact coefficient strings of the member polynomial at row `n`.
#[pyfunction]
#[pyo3(signature = (family, n, *, xtype=None, j=None, a=None, b=None))]
fn member(
    family: &str,
    n: usize,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
) -> PyResult<Vec<String>> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    let degree = row_to_degree(&spec, n)?;
    Ok(xop_poly(&spec, degree).map_err(to_py_err)?.to_string_vec())
}

/// Exact evaluation of the row-`n` member at a rational point.
#[pyfunction]
#[pyo3(signature = (family, n, point, *, xtype=None, j=None, a=None, b=None))]
fn eval_member(
    family: &str,
    n: usize,
    point: &str,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
) -> PyResult<String> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    let degree = row_to_degree(&spec, n)?;
    let x = parse_rat(point).map_err(to_py_err)?;
    Ok(fmt_rat(
        &xop_poly(&spec, degree).map_err(to_py_err)?.eval(&x),
    ))
}

/// The 2j+3-band coefficient table at row `n` as a dictionary mirroring the
/// CLI's JSON layout: shift strings to exact coefficient strings.
#[pyfunction]
#[pyo3(signature = (family, n, *, xtype=None, j=None, a=None, b=None, convention="closed"))]
fn table(
    py: Python<'_>,
    family: &str,
    n: usize,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
    convention: &str,
) -> PyResult<Py<PyAny>> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    row_to_degree(&spec, n)?;
    let conv = parse_convention(convention)?;
    let tbl = CoeffTable::two_j_three(&spec, conv, n).map_err(to_py_err)?;
    Ok(value_to_py(py, &tbl.to_json())?.unbind())
}

/// The older 4j+1-style squared-seed table at row `n` (types I/II only).
#[pyfunction]
#[pyo3(signature = (family, n, *, xtype=None, j=None, a=None, b=None))]
fn table_four_j_one(
    py: Python<'_>,
    family: &str,
    n: usize,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
) -> PyResult<Py<PyAny>> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    let tbl = CoeffTable::four_j_one(&spec, n).map_err(to_py_err)?;
    Ok(value_to_py(py, &tbl.to_json())?.unbind())
}

/// Ascending coefficient strings of the band multiplier in the requested
/// convention ("closed", "raw").
#[pyfunction]
#[pyo3(signature = (family, *, xtype=None, j=None, a=None, b=None, convention="closed"))]
fn multiplier(
    family: &str,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
    convention: &str,
) -> PyResult<Vec<String>> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    let conv = parse_convention(convention)?;
    let mult = Multiplier::compute(&spec).map_err(to_py_err)?;
    Ok(mult.poly(conv).to_string_vec())
}

/// The constants (alpha, beta) of the type-III closed-multiplier
/// decomposition I_j = alpha*P_{j+1} + beta*P_0, as exact strings.
#[pyfunction]
#[pyo3(signature = (family, *, xtype=None, j=None, a=None, b=None))]
fn multiplier_decomposition(
    family: &str,
    xtype: Option<&str>,
    j: Option<u32>,
    a: Option<&str>,
    b: Option<&str>,
) -> PyResult<(String, String)> {
    let spec = build_spec(family, xtype, j, a, b, false)?;
    let (alpha, beta) = lemma2_constants(&spec).map_err(to_py_err)?;
    Ok((fmt_rat(&alpha), fmt_rat(&beta)))
}

/// Ascending exact coefficient strings of the classical monic polynomial of
/// degree `n` for the named family.
#[pyfunction]
#[pyo3(signature = (family, n, *, a=None, b=None))]
fn classical_monic(
    family: &str,
    n: usize,
    a: Option<&str>,
    b: Option<&str>,
) -> PyResult<Vec<String>> {
    let fam = FamilySpec::from_strings(family, a, b).map_err(to_py_err)?;
    Ok(fam.monic(n).map_err(to_py_err)?.to_string_vec())
}

#[pymodule]
fn _xoprec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(row_degree, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(eval_member, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(table_four_j_one, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(classical_monic, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
