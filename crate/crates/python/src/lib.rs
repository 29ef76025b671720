//! Python bindings. Rationals cross the boundary as exact `"num/den"`
//! strings; counts as Python ints; structures as `Structure` objects that
//! speak the same JSON as the command-line tool.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fusslog::structure::{self as st, Target};
use fusslog::verify::{Suite, VerifyOptions};
use fusslog::{catalan, fps, multisets, paths, render, trees, DEFAULT_CAP};

fn err(e: fusslog::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cap(force: bool) -> Option<u64> {
    (!force).then_some(DEFAULT_CAP)
}

/// A path, field, ornament, tree, forest, cycle-tree or multiset.
#[pyclass(name = "Structure", module = "fusslog", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Structure(st::Structure);

#[pymethods]
impl Structure {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        st::Structure::from_json(text).map(Structure).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind()
    }

    /// Follows the bijections to `target` ("path", "minimal-field",
    /// "ornament", "multiset", "cycle-tree", "tree", "minimal-tree", "forest").
    fn map(&self, target: &str) -> PyResult<Self> {
        let target: Target = target.parse().map_err(err)?;
        self.0.map_to(target).map(Structure).map_err(err)
    }

    fn render(&self) -> String {
        render::render(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Structure({})", self.0.to_json())
    }

    fn __str__(&self) -> String {
        self.0.to_json()
    }
}

#[pyfunction]
fn coeff_log(k: u64, n: u64) -> PyResult<String> {
    catalan::coeff_log(k, n).map(|r| r.to_string()).map_err(err)
}

#[pyfunction]
fn coeff_log_power(k: u64, n: u64, a: u64) -> PyResult<String> {
    catalan::coeff_log_power(k, n, a).map(|r| r.to_string()).map_err(err)
}

#[pyfunction]
fn knuth_log2_coeff(n: u64) -> PyResult<String> {
    catalan::knuth_log2_coeff(n).map(|r| r.to_string()).map_err(err)
}

#[pyfunction]
fn gen_catalan(k: u64, n: u64) -> BigUint {
    catalan::gen_catalan(k, n)
}

#[pyfunction]
fn count_paths(k: u64, n: u64) -> PyResult<BigUint> {
    catalan::count_paths(k, n).map_err(err)
}

#[pyfunction]
fn count_ornaments(k: u64, n: u64) -> PyResult<BigUint> {
    catalan::count_ornaments(k, n).map_err(err)
}

#[pyfunction]
fn count_multisets(k: u64, n: u64) -> PyResult<BigUint> {
    multisets::count_multisets(k, n).map_err(err)
}

/// Coefficients `0..=order` of `log G_k`.
#[pyfunction]
fn log_gk_series(k: u32, order: usize) -> PyResult<Vec<String>> {
    Ok(fps::gk_series(k, order).log().map_err(err)?.to_strings())
}

/// Rows `(n, closed_form, series_value, match)`.
#[pyfunction]
#[pyo3(signature = (k, max_n, power = 1))]
fn coeff_table(k: u64, max_n: u64, power: u64) -> PyResult<Vec<(u64, String, String, bool)>> {
    let table = catalan::CoeffTable::build(k, max_n, power).map_err(err)?;
    Ok(table
        .rows
        .into_iter()
        .map(|r| (r.n, r.closed_form.to_string(), r.series_value.to_string(), r.matches))
        .collect())
}

/// All structures of one kind on `[n]`, in the command-line dump order.
#[pyfunction]
#[pyo3(signature = (structure, k, n, force = false))]
fn enumerate(structure: &str, k: u32, n: u32, force: bool) -> PyResult<Vec<Structure>> {
    let cap = cap(force);
    let labels: Vec<u32> = (1..=n).collect();
    fn wrap<T: Into<st::Structure>>(v: fusslog::Result<Vec<T>>) -> PyResult<Vec<Structure>> {
        Ok(v.map_err(err)?.into_iter().map(|x| Structure(x.into())).collect())
    }
    match structure {
        "paths" => wrap(paths::enumerate_paths(k, &labels, cap)),
        "minimal-paths" => wrap(paths::enumerate_minimal_paths(k, &labels, cap)),
        "ornaments" => wrap(paths::enumerate_ornaments(k, n, cap)),
        "trees" => wrap(trees::enumerate_trees(k, &labels, cap)),
        "minimal-trees" => wrap(trees::enumerate_minimal_trees(k, &labels, cap)),
        "cycle-trees" => wrap(trees::enumerate_cycle_rooted(k, n, cap)),
        "multisets" => wrap(multisets::enumerate_multisets(k, n, false, cap)),
        "rooted-multisets" => wrap(multisets::enumerate_multisets(k, n, true, cap)),
        other => Err(PyValueError::new_err(format!("unknown structure {other:?}"))),
    }
}

/// Runs a verification suite; returns `(overall, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite, ks, max_n, force = false))]
fn verify(py: Python<'_>, suite: &str, ks: Vec<u32>, max_n: u32, force: bool) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let opts = VerifyOptions { cap: cap(force), inject_fault: false };
    let report = py
        .detach(|| fusslog::verify::verify(suite, &ks, max_n, &opts))
        .map_err(err)?;
    let json = serde_json::to_string(&report).expect("report serializes");
    Ok((report.overall, json))
}

#[pymodule]
#[pyo3(name = "fusslog")]
fn fusslog_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Structure>()?;
    m.add_function(wrap_pyfunction!(coeff_log, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_log_power, m)?)?;
    m.add_function(wrap_pyfunction!(knuth_log2_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(gen_catalan, m)?)?;
    m.add_function(wrap_pyfunction!(count_paths, m)?)?;
    m.add_function(wrap_pyfunction!(count_ornaments, m)?)?;
    m.add_function(wrap_pyfunction!(count_multisets, m)?)?;
    m.add_function(wrap_pyfunction!(log_gk_series, m)?)?;
    m.add_function(wrap_pyfunction!(coeff_table, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
