//! Python bindings: `import bks`.

use bks_core::geometry::{Place, SymplecticMatrix};
use bks_core::schwartz::{self, CoefficientFunction as CoreFunction};
use bks_core::suite::{self, Status};
use bks_core::weyl::{self, WeylCosetDatum};
use bks_core::{Error, MellinSymbol as CoreSymbol, ScalarQV as CoreScalar};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

fn err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        Error::NotExpandable | Error::FloorMismatch { .. } => PyArithmeticError::new_err(e.to_string()),
        e if matches!(e.exit_code(), 2 | 3) => PyValueError::new_err(e.to_string()),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Element of `Q(v)`, `q = v^2`, written in canonical form such as `(1+q)/(1-q^2)`.
#[pyclass(name = "ScalarQV", skip_from_py_object, frozen, eq, hash, str)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyScalar(CoreScalar);

impl std::fmt::Display for PyScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        CoreScalar::parse(text).map(PyScalar).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("ScalarQV('{}')", self.0)
    }

    fn __add__(&self, o: &Self) -> Self {
        PyScalar(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyScalar(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyScalar(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(PyScalar).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyScalar(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Numeric value at a real `q > 0`.
    fn eval(&self, q: f64) -> f64 {
        self.0.eval_at_q(q)
    }
}

/// Rational function of `U` over `Q(v)`, e.g. `1/((1-U)*(1-q^2*U^2))`.
#[pyclass(name = "MellinSymbol", skip_from_py_object, frozen, eq, str)]
#[derive(Clone, PartialEq)]
pub struct PySymbol(CoreSymbol);

impl std::fmt::Display for PySymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl PySymbol {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        CoreSymbol::parse(text).map(PySymbol).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("MellinSymbol('{}')", self.0)
    }

    fn __add__(&self, o: &Self) -> Self {
        PySymbol(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PySymbol(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PySymbol(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(PySymbol).map_err(err)
    }

    /// Lowest exponent of the Laurent expansion, `None` for zero.
    #[getter]
    fn floor(&self) -> Option<i64> {
        self.0.floor()
    }

    /// Nonzero Laurent coefficients up to `U^upto` as `(exponent, ScalarQV)`.
    fn laurent(&self, upto: i64) -> PyResult<Vec<(i64, PyScalar)>> {
        let c = self.0.laurent_expand(upto).map_err(err)?;
        Ok(c.into_iter().map(|(m, x)| (m, PyScalar(x))).collect())
    }

    fn eval(&self, q: f64, u: Complex64) -> Complex64 {
        self.0.eval(q, u)
    }
}

/// Right `Sp_2n(Z_p)`-invariant function `sum c_m 1_m`.
#[pyclass(name = "CoefficientFunction", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
pub struct PyFunction(CoreFunction);

#[pymethods]
impl PyFunction {
    #[staticmethod]
    fn indicator(n: usize, c: i64) -> PyResult<Self> {
        CoreFunction::indicator(n, c).map(PyFunction).map_err(err)
    }

    #[staticmethod]
    fn finite(n: usize, floor: i64, coeffs: Vec<String>) -> PyResult<Self> {
        let c = coeffs.iter().map(|s| CoreScalar::parse(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        CoreFunction::finite(n, floor, c).map(PyFunction).map_err(err)
    }

    #[staticmethod]
    fn from_symbol(n: usize, symbol: &PySymbol) -> PyResult<Self> {
        schwartz::inverse_mellin(&symbol.0, n).map(PyFunction).map_err(err)
    }

    #[staticmethod]
    fn basic(n: usize) -> PyResult<Self> {
        schwartz::basic_function(n).map(PyFunction).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        CoreFunction::from_json(text).map(PyFunction).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// First nonzero coefficient index, `None` for the zero function.
    #[getter]
    fn floor(&self) -> Option<i64> {
        self.0.support_floor()
    }

    fn mellin(&self) -> PySymbol {
        PySymbol(self.0.mellin())
    }

    fn coefficient(&self, m: i64) -> PyResult<PyScalar> {
        self.0.coefficient(m).map(PyScalar).map_err(err)
    }

    fn coefficients(&self, upto: i64) -> PyResult<Vec<(i64, PyScalar)>> {
        let c = self.0.coefficients(upto).map_err(err)?;
        Ok(c.into_iter().map(|(m, x)| (m, PyScalar(x))).collect())
    }

    fn __repr__(&self) -> String {
        format!("CoefficientFunction(n={}, mellin='{}')", self.0.n(), self.0.mellin())
    }
}

#[pyfunction]
fn fourier(f: &PyFunction) -> PyResult<PyFunction> {
    schwartz::fourier(&f.0).map(PyFunction).map_err(err)
}

/// `(product, symbol)` for `d(s, chi)`, or for `a_w(s, chi)` when a coset is given.
#[pyfunction]
#[pyo3(signature = (n, coset = None))]
fn lfactors(n: usize, coset: Option<Vec<usize>>) -> PyResult<(String, String)> {
    let product = match coset {
        Some(c) => weyl::a_w(&WeylCosetDatum::new(n, c).map_err(err)?).map_err(err)?,
        None => {
            WeylCosetDatum::identity(n).map_err(err)?;
            weyl::d_factor(n)
        }
    };
    Ok((product.to_string(), product.symbol(n).to_string()))
}

#[pyfunction]
fn c_w(n: usize, coset: Vec<usize>) -> PyResult<PySymbol> {
    let w = WeylCosetDatum::new(n, coset).map_err(err)?;
    weyl::c_w(&w).map(PySymbol).map_err(err)
}

/// Norm of a symplectic matrix given as rows of rational strings. Returns
/// `(norm, coset_index)` at a prime `p`, `(norm, None)` for `p=None` (real place).
#[pyfunction]
#[pyo3(signature = (matrix, p = None))]
fn norm(matrix: Vec<Vec<String>>, p: Option<u64>) -> PyResult<(String, Option<i64>)> {
    let rows = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.trim().parse().map_err(|e| PyValueError::new_err(format!("`{x}`: {e}"))))
                .collect::<PyResult<Vec<_>>>()
        })
        .collect::<PyResult<Vec<_>>>()?;
    let g = SymplecticMatrix::new(rows).map_err(err)?;
    let place = p.map_or(Place::Infinite, Place::Finite);
    suite::norm_summary(&g, place).map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn run_suite<'py>(py: Python<'py>, checks: Vec<suite::Check>) -> PyResult<Bound<'py, PyList>> {
    let results = py.detach(|| suite::run_checks(&checks));
    let items = results
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", &r.name)?;
            d.set_item("passed", r.status == Status::Pass)?;
            d.set_item("detail", to_py(py, &r.detail)?)?;
            d.set_item("error", r.error.as_deref())?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Symbolic suite at rank `n`; list of `{name, passed, detail, error}`.
#[pyfunction]
#[pyo3(signature = (n, samples = 25, seed = 0))]
fn verify_local<'py>(py: Python<'py>, n: usize, samples: usize, seed: u64) -> PyResult<Bound<'py, PyList>> {
    run_suite(py, suite::local(n, samples, seed).map_err(err)?)
}

/// Rank-one shell sum at one point; the full report as a dict.
#[pyfunction]
#[pyo3(signature = (q, z, s, shells = 40))]
fn verify_rank_one<'py>(py: Python<'py>, q: f64, z: Complex64, s: Complex64, shells: u32) -> PyResult<Bound<'py, PyAny>> {
    let r = bks_core::oracles::rank_one_intertwining(q, z, s, shells).map_err(err)?;
    let mut v = serde_json::to_value(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    v["agrees"] = Value::Bool(r.agrees());
    to_py(py, &v)
}

/// Poisson summation check for `n = 1`; the report as a dict. Raises on
/// failure or domain errors.
#[pyfunction]
#[pyo3(signature = (lam, radius = 10.0, tol = 1e-8))]
fn verify_global<'py>(py: Python<'py>, lam: f64, radius: f64, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| bks_core::global::verify_theorem_n1(lam, radius, tol))
        .map_err(err)?;
    to_py(py, &serde_json::to_value(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?)
}

#[pymodule]
fn bks(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PySymbol>()?;
    m.add_class::<PyFunction>()?;
    m.add_function(wrap_pyfunction!(fourier, m)?)?;
    m.add_function(wrap_pyfunction!(lfactors, m)?)?;
    m.add_function(wrap_pyfunction!(c_w, m)?)?;
    m.add_function(wrap_pyfunction!(norm, m)?)?;
    m.add_function(wrap_pyfunction!(verify_local, m)?)?;
    m.add_function(wrap_pyfunction!(verify_rank_one, m)?)?;
    m.add_function(wrap_pyfunction!(verify_global, m)?)?;
    Ok(())
}
