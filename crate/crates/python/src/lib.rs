//! Python bindings. Results come back as plain dicts, lists and ints;
//! matrices as `Matrix` objects or nested `[[a, b], [c, d]]` lists.

use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyInt, PyList};
use serde_json::Value;

use kit::clean::all_exchange_witnesses;
use kit::{CleanVerdict, Conic, Int, Mat2, Ring};

create_exception!(sr1kit, Sr1kitError, PyValueError);

fn lib_err(e: kit::Error) -> PyErr {
    Sr1kitError::new_err(format!("{} ({})", e, e.kind()))
}

fn to_int(obj: &Bound<'_, PyAny>) -> PyResult<Int> {
    if obj.is_instance_of::<PyInt>() && !obj.is_instance_of::<pyo3::types::PyBool>() {
        if let Ok(v) = obj.extract::<i64>() {
            return Ok(Int::from(v));
        }
        let text = obj.str()?.to_string();
        return text
            .parse()
            .map_err(|e: kit::int::ParseIntError| PyValueError::new_err(e.0));
    }
    Err(PyTypeError::new_err(format!(
        "expected int, got {}",
        obj.get_type().name()?
    )))
}

fn int_to_py<'py>(py: Python<'py>, v: &Int) -> PyResult<Bound<'py, PyAny>> {
    match v.to_i64() {
        Some(small) => Ok(small.into_pyobject(py)?.into_any()),
        None => py.get_type::<PyInt>().call1((v.to_string(),)),
    }
}

/// Large integers serialize as decimal strings; they come back as ints.
fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => match n.as_u64() {
                Some(u) => u.into_pyobject(py)?.into_any(),
                None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
            },
        },
        Value::String(s) => match s.parse::<Int>() {
            Ok(i) if !s.is_empty() && s.trim() == s => int_to_py(py, &i)?,
            _ => s.into_pyobject(py)?.into_any(),
        },
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialized<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &serde_json::to_value(v).expect("results serialize"))
}

/// A 2×2 integer matrix with exact, unbounded entries.
#[pyclass(module = "sr1kit", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    inner: Mat2<Int>,
}

impl Matrix {
    fn wrap(inner: Mat2<Int>) -> Matrix {
        Matrix { inner }
    }
}

#[pymethods]
impl Matrix {
    #[new]
    fn new(
        a11: &Bound<'_, PyAny>,
        a12: &Bound<'_, PyAny>,
        a21: &Bound<'_, PyAny>,
        a22: &Bound<'_, PyAny>,
    ) -> PyResult<Self> {
        Ok(Matrix::wrap(Mat2::int(
            to_int(a11)?,
            to_int(a12)?,
            to_int(a21)?,
            to_int(a22)?,
        )))
    }

    /// Parses the `"a,b;c,d"` literal form.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Matrix::wrap).map_err(lib_err)
    }

    #[staticmethod]
    fn identity() -> Self {
        Matrix::wrap(Mat2::identity())
    }

    #[getter]
    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner
            .entries()
            .iter()
            .map(|e| int_to_py(py, e))
            .collect()
    }

    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialized(py, &self.inner)
    }

    fn det<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        int_to_py(py, &self.inner.det())
    }

    fn trace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        int_to_py(py, &self.inner.trace())
    }

    fn transpose(&self) -> Self {
        Matrix::wrap(self.inner.transpose())
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn is_idempotent(&self) -> bool {
        self.inner.is_idempotent()
    }

    fn __add__(&self, other: &Matrix) -> Self {
        Matrix::wrap(&self.inner + &other.inner)
    }

    fn __sub__(&self, other: &Matrix) -> Self {
        Matrix::wrap(&self.inner - &other.inner)
    }

    fn __mul__(&self, other: &Matrix) -> Self {
        Matrix::wrap(&self.inner * &other.inner)
    }

    fn __matmul__(&self, other: &Matrix) -> Self {
        self.__mul__(other)
    }

    fn __str__(&self) -> String {
        self.inner.format()
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.inner.entries();
        format!("Matrix({a}, {b}, {c}, {d})")
    }
}

/// `{"U", "V", "D"}` with `U·A·V = diag(D)`.
#[pyfunction]
fn smith<'py>(py: Python<'py>, a: &Matrix) -> PyResult<Bound<'py, PyAny>> {
    serialized(py, &kit::smith_form(&a.inner))
}

/// Stable range one over the integers, or over Z/n when `modulus` is given.
#[pyfunction]
#[pyo3(signature = (a, modulus=None))]
fn sr1<'py>(py: Python<'py>, a: &Matrix, modulus: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let dict = PyDict::new(py);
    match modulus {
        None => {
            let verdict = kit::is_sr1_integer(&a.inner);
            dict.set_item("ring", "int")?;
            dict.set_item("sr1", verdict.is_sr1)?;
            dict.set_item("reason", verdict.reason_label())?;
        }
        Some(n) => {
            let ring: Ring = format!("zmod:{n}").parse().map_err(lib_err)?;
            let m = a.inner.project(n).map_err(lib_err)?;
            let left = kit::lsr1_finite(&m).map_err(lib_err)?;
            let right = kit::rsr1_finite(&m).map_err(lib_err)?;
            dict.set_item("ring", ring.to_string())?;
            dict.set_item("lsr1", left)?;
            dict.set_item("rsr1", right)?;
            dict.set_item("sr1", left && right)?;
        }
    }
    Ok(dict.into_any())
}

/// Certified `Y` making `A + Y(XA − I)` a unit.
#[pyfunction]
fn find_unitizer<'py>(py: Python<'py>, a: &Matrix, x: &Matrix) -> PyResult<Bound<'py, PyAny>> {
    let cert = kit::find_unitizer(&a.inner, &x.inner).map_err(lib_err)?;
    serialized(py, &cert)
}

/// Exhaustive search over `Y` with entries in `[-bound, bound]`; `None` if nothing works.
#[pyfunction]
#[pyo3(signature = (a, x, bound=2))]
fn search_unitizer<'py>(
    py: Python<'py>,
    a: &Matrix,
    x: &Matrix,
    bound: u64,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    match kit::search_unitizer_bounded(&a.inner, &x.inner, bound).certificate() {
        Some(c) => serialized(py, c).map(Some),
        None => Ok(None),
    }
}

/// `{"clean": True | False | None, "E", "U"}`; `None` means the fallback bound was hit.
#[pyfunction]
#[pyo3(signature = (a, bound=100))]
fn is_clean<'py>(py: Python<'py>, a: &Matrix, bound: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = kit::is_clean(&a.inner, bound);
    let dict = PyDict::new(py);
    dict.set_item("clean", report.is_clean())?;
    dict.set_item("complete", report.verdict != CleanVerdict::Unknown)?;
    if let Some(w) = &report.witness {
        dict.set_item("E", Matrix::wrap(w.e.clone()))?;
        dict.set_item("U", Matrix::wrap(w.u.clone()))?;
    }
    Ok(dict.into_any())
}

/// First `(M, E)` in lexicographic order with `E = A + M(A − A²)` idempotent.
#[pyfunction]
#[pyo3(signature = (a, bound=3))]
fn exchange_witness(a: &Matrix, bound: u64) -> Option<(Matrix, Matrix)> {
    kit::is_exchange_bounded(&a.inner, bound)
        .witness()
        .map(|w| (Matrix::wrap(w.m.clone()), Matrix::wrap(w.e.clone())))
}

#[pyfunction]
#[pyo3(signature = (a, bound=3))]
fn exchange_witnesses(a: &Matrix, bound: u64) -> Vec<(Matrix, Matrix)> {
    all_exchange_witnesses(&a.inner, bound)
        .into_iter()
        .map(|w| (Matrix::wrap(w.m), Matrix::wrap(w.e)))
        .collect()
}

/// Integer points of `qa·x² + qb·xy + qc·y² + l1·x + l2·y + f = 0`.
#[pyfunction]
#[pyo3(signature = (qa, qb, qc, l1, l2, f, bound=100))]
#[allow(clippy::too_many_arguments)]
fn solve_conic<'py>(
    py: Python<'py>,
    qa: &Bound<'py, PyAny>,
    qb: &Bound<'py, PyAny>,
    qc: &Bound<'py, PyAny>,
    l1: &Bound<'py, PyAny>,
    l2: &Bound<'py, PyAny>,
    f: &Bound<'py, PyAny>,
    bound: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let conic = Conic::new(
        to_int(qa)?,
        to_int(qb)?,
        to_int(qc)?,
        to_int(l1)?,
        to_int(l2)?,
        to_int(f)?,
    );
    let set = kit::solve_conic(&conic, bound).map_err(lib_err)?;
    serialized(py, &set)
}

/// Grid survey of `[-entry_bound, entry_bound]⁴`. Releases the GIL while scanning.
#[pyfunction]
#[pyo3(signature = (entry_bound=9, clean_bound=6, exchange_bound=6))]
fn density_scan<'py>(
    py: Python<'py>,
    entry_bound: i64,
    clean_bound: i64,
    exchange_bound: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let summary = py.detach(|| kit::density_scan(entry_bound, clean_bound, exchange_bound));
    serialized(py, &summary)
}

#[pymodule]
fn sr1kit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matrix>()?;
    m.add("Sr1kitError", m.py().get_type::<Sr1kitError>())?;
    m.add_function(wrap_pyfunction!(smith, m)?)?;
    m.add_function(wrap_pyfunction!(sr1, m)?)?;
    m.add_function(wrap_pyfunction!(find_unitizer, m)?)?;
    m.add_function(wrap_pyfunction!(search_unitizer, m)?)?;
    m.add_function(wrap_pyfunction!(is_clean, m)?)?;
    m.add_function(wrap_pyfunction!(exchange_witness, m)?)?;
    m.add_function(wrap_pyfunction!(exchange_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(solve_conic, m)?)?;
    m.add_function(wrap_pyfunction!(density_scan, m)?)?;
    Ok(())
}
