//! Python bindings: partitions, decomposition matrices and the verification reports.
//!
//! Reports are returned as plain dicts (their JSON form); invalid input raises
//! `ValueError` and a failed internal invariant raises `RuntimeError`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use rockcore::doubles::Preset;
use rockcore::partitions::{self as parts, parse_components};
use rockcore::schiver::{OddForm, StarConvention};
use rockcore::walk::WalkAlgebra;
use rockcore::{decmat, doubles, lr, powersum, schiver, walk, weyl, wreath, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn as_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// An integer partition; accepts "6,4,2,2,1,1", "-" for ∅, or a list of parts.
#[pyclass(name = "Partition", eq, frozen, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition(parts::Partition);

fn extract_partition(obj: &Bound<'_, PyAny>) -> PyResult<parts::Partition> {
    if let Ok(p) = obj.cast::<PyPartition>() {
        return Ok(p.get().0.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(to_py);
    }
    let v: Vec<usize> = obj.extract()?;
    parts::Partition::new(v).map_err(to_py)
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPartition(extract_partition(parts)?))
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn dominates(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(parts::dominated_by(&extract_partition(other)?, &self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition('{}')", self.0)
    }
}

/// A decomposition matrix with string row and column labels.
#[pyclass(name = "LabeledMatrix", frozen)]
struct PyMatrix(rockcore::LabeledMatrix);

#[pymethods]
impl PyMatrix {
    #[getter]
    fn rows(&self) -> Vec<String> {
        self.0.row_labels.iter().map(|l| l.to_string()).collect()
    }

    #[getter]
    fn cols(&self) -> Vec<String> {
        self.0.col_labels.iter().map(|l| l.to_string()).collect()
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<i64>> {
        self.0.entries.clone()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
fn p_core(lam: &Bound<'_, PyAny>, p: usize) -> PyResult<PyPartition> {
    Ok(PyPartition(
        parts::p_core(&extract_partition(lam)?, p).map_err(to_py)?,
    ))
}

#[pyfunction]
fn p_weight(lam: &Bound<'_, PyAny>, p: usize) -> PyResult<usize> {
    parts::p_weight(&extract_partition(lam)?, p).map_err(to_py)
}

/// The quotient as its "[a|b|c]" string.
#[pyfunction]
fn p_quotient(lam: &Bound<'_, PyAny>, p: usize, m: usize) -> PyResult<String> {
    Ok(parts::p_quotient(&extract_partition(lam)?, p, m)
        .map_err(to_py)?
        .to_string())
}

#[pyfunction]
fn reconstruct(
    core: &Bound<'_, PyAny>,
    quotient: &str,
    p: usize,
    m: usize,
) -> PyResult<PyPartition> {
    let comps = parse_components(quotient).map_err(to_py)?;
    Ok(PyPartition(
        parts::reconstruct(&extract_partition(core)?, &comps, p, m).map_err(to_py)?,
    ))
}

#[pyfunction]
fn abacus(lam: &Bound<'_, PyAny>, p: usize, m: usize) -> PyResult<String> {
    Ok(parts::abacus_of(&extract_partition(lam)?, p, m)
        .map_err(to_py)?
        .render())
}

#[pyfunction]
fn rouquier_core(p: usize, w: usize) -> PyResult<PyPartition> {
    Ok(PyPartition(parts::rouquier_core(p, w).map_err(to_py)?))
}

#[pyfunction]
fn is_rouquier(core: &Bound<'_, PyAny>, p: usize, w: usize) -> PyResult<bool> {
    parts::is_rouquier(&extract_partition(core)?, p, w).map_err(to_py)
}

#[pyfunction]
fn lr_coeff(lam: &Bound<'_, PyAny>, mu: &Bound<'_, PyAny>, nu: &Bound<'_, PyAny>) -> PyResult<u64> {
    Ok(lr::lr_coeff(
        &extract_partition(lam)?,
        &extract_partition(mu)?,
        &extract_partition(nu)?,
    ))
}

#[pyfunction]
fn rock_decmatrix(p: usize, w: usize) -> PyResult<PyMatrix> {
    Ok(PyMatrix(decmat::rock_decmatrix(p, w).map_err(to_py)?))
}

#[pyfunction]
fn adjustment_matrix(p: usize, w: usize) -> PyResult<PyMatrix> {
    let m = decmat::adjustment_matrix(p, w, &weyl::oracle_provider(p as u64)).map_err(to_py)?;
    Ok(PyMatrix(m))
}

#[pyfunction]
fn full_decmatrix(p: usize, w: usize) -> PyResult<PyMatrix> {
    let m = decmat::full_decmatrix(p, w, &weyl::oracle_provider(p as u64)).map_err(to_py)?;
    Ok(PyMatrix(m))
}

#[pyfunction]
fn schur_decmatrix(n: usize, r: usize, p: u64) -> PyResult<PyMatrix> {
    Ok(PyMatrix(weyl::schur_decmatrix(n, r, p).map_err(to_py)?))
}

/// Verify a double preset ("s1", "tri:n", "schur:n") up to degree r.
#[pyfunction]
#[pyo3(signature = (preset, r, characteristic = 0))]
fn verify_double<'py>(
    py: Python<'py>,
    preset: &str,
    r: usize,
    characteristic: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let preset: Preset = preset.parse().map_err(to_py)?;
    let data = preset.build(r, characteristic).map_err(to_py)?;
    let rep =
        doubles::verify_double(&preset.to_string(), &data, r, characteristic).map_err(to_py)?;
    let d = as_dict(py, &rep)?;
    d.set_item("passed", rep.passed())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (n, characteristic = 0))]
fn triangular_quiver<'py>(
    py: Python<'py>,
    n: usize,
    characteristic: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = doubles::triangular_quiver(n, characteristic).map_err(to_py)?;
    let d = as_dict(py, &rep)?;
    d.set_item("passed", rep.passed())?;
    Ok(d)
}

/// θ on the A₁ double for every degree up to r_max.
#[pyfunction]
#[pyo3(signature = (n, r_max, characteristic = 0))]
fn check_theta<'py>(
    py: Python<'py>,
    n: usize,
    r_max: usize,
    characteristic: u64,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let checks = schiver::check_theta(
        n,
        r_max,
        characteristic,
        OddForm::Exterior,
        StarConvention::default(),
    )
    .map_err(to_py)?;
    checks
        .iter()
        .map(|c| {
            let d = as_dict(py, c)?;
            d.set_item("passed", c.passed())?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (n, r, characteristic = 0))]
fn wreath_localization<'py>(
    py: Python<'py>,
    n: usize,
    r: usize,
    characteristic: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = wreath::wreath_localization(n, r, characteristic).map_err(to_py)?;
    let d = as_dict(py, &rep)?;
    d.set_item("passed", rep.passed())?;
    Ok(d)
}

/// Walk complex; `side` is "double" or "schiver".
#[pyfunction]
#[pyo3(signature = (n, r, window, side = "double", characteristic = 0))]
fn walk_complex<'py>(
    py: Python<'py>,
    n: usize,
    r: usize,
    window: usize,
    side: &str,
    characteristic: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let algebra = match side {
        "double" => WalkAlgebra::Double,
        "schiver" => WalkAlgebra::Schiver,
        _ => return Err(PyValueError::new_err(format!("unknown side {side:?}"))),
    };
    let rep = walk::walk_complex(algebra, n, r, window, characteristic).map_err(to_py)?;
    let d = as_dict(py, &rep)?;
    d.set_item("passed", rep.passed())?;
    Ok(d)
}

#[pyfunction]
fn power_sum_complex<'py>(py: Python<'py>, n: usize, r: usize) -> PyResult<Bound<'py, PyAny>> {
    let rep = powersum::power_sum_complex(&schiver::Quiver::linear(1), 0, n, r).map_err(to_py)?;
    let d = as_dict(py, &rep)?;
    d.set_item("passed", rep.passed())?;
    Ok(d)
}

#[pymodule]
fn rockpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(p_core, m)?)?;
    m.add_function(wrap_pyfunction!(p_weight, m)?)?;
    m.add_function(wrap_pyfunction!(p_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(abacus, m)?)?;
    m.add_function(wrap_pyfunction!(rouquier_core, m)?)?;
    m.add_function(wrap_pyfunction!(is_rouquier, m)?)?;
    m.add_function(wrap_pyfunction!(lr_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(rock_decmatrix, m)?)?;
    m.add_function(wrap_pyfunction!(adjustment_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(full_decmatrix, m)?)?;
    m.add_function(wrap_pyfunction!(schur_decmatrix, m)?)?;
    m.add_function(wrap_pyfunction!(verify_double, m)?)?;
    m.add_function(wrap_pyfunction!(triangular_quiver, m)?)?;
    m.add_function(wrap_pyfunction!(check_theta, m)?)?;
    m.add_function(wrap_pyfunction!(wreath_localization, m)?)?;
    m.add_function(wrap_pyfunction!(walk_complex, m)?)?;
    m.add_function(wrap_pyfunction!(power_sum_complex, m)?)?;
    Ok(())
}
