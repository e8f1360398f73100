use std::collections::BTreeMap;

use circnet::exact_linalg::{fmt_rational, RatMatrix, WedgeVector};
use circnet::groves_dimers::{cgs_plucker, grove_measurements, lagrangian_plucker, lam_plucker};
use circnet::network::{effective_resistance as resistance, Network};
use circnet::noncrossing::{enumerate_nc, lagrangian_extension as lext, NonCrossingPartition};
use circnet::symplectic_concordance::{algorithm_factorization, unique_form_solver};
use circnet::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::Parse { .. } | Error::Topology(_) | Error::Gauge(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn rows(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(fmt_rational).collect())
        .collect()
}

fn coords(w: &WedgeVector) -> BTreeMap<String, String> {
    w.terms()
        .map(|(set, c)| (set.to_string(), fmt_rational(c)))
        .collect()
}

fn partition(text: &str, n: Option<usize>) -> PyResult<NonCrossingPartition> {
    NonCrossingPartition::parse(text, n).map_err(to_py)
}

/// Response matrix of a network given as `.enet` text, entries as strings.
#[pyfunction]
fn response_matrix(text: &str) -> PyResult<Vec<Vec<String>>> {
    let net = Network::parse(text).map_err(to_py)?;
    Ok(rows(net.response_matrix().map_err(to_py)?.matrix()))
}

#[pyfunction]
fn effective_resistance(text: &str) -> PyResult<Vec<Vec<String>>> {
    let net = Network::parse(text).map_err(to_py)?;
    let m = net.response_matrix().map_err(to_py)?;
    Ok(rows(resistance(&m).map_err(to_py)?.matrix()))
}

/// Grove measurements keyed by partition.
#[pyfunction]
fn groves(text: &str) -> PyResult<BTreeMap<String, String>> {
    let net = Network::parse(text).map_err(to_py)?;
    let gt = grove_measurements(&net).map_err(to_py)?;
    Ok(gt
        .entries()
        .map(|(s, v)| (s.to_string(), fmt_rational(v)))
        .collect())
}

/// Plücker coordinates under `map` (`lam`, `cgs` or `lagrangian`).
#[pyfunction]
#[pyo3(signature = (text, map = "lam"))]
fn plucker(text: &str, map: &str) -> PyResult<BTreeMap<String, String>> {
    let net = Network::parse(text).map_err(to_py)?;
    let gt = grove_measurements(&net).map_err(to_py)?;
    let w = match map {
        "lam" => lam_plucker(&gt),
        "cgs" => cgs_plucker(&gt),
        "lagrangian" => lagrangian_plucker(&gt),
        other => return Err(PyValueError::new_err(format!("unknown map {other:?}"))),
    };
    Ok(coords(&w))
}

/// Runs the named checks on a network or response-matrix file and returns
/// `(name, status)` pairs.
#[pyfunction]
#[pyo3(signature = (path, checks = "all"))]
fn verify(path: &str, checks: &str) -> PyResult<Vec<(String, String)>> {
    let reports = circnet::cli::verify_source(path, checks).map_err(to_py)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.name.clone(), r.status.to_string()))
        .collect())
}

#[pyfunction]
fn noncrossing_partitions(n: usize) -> PyResult<Vec<String>> {
    Ok(enumerate_nc(n).map_err(to_py)?.iter().map(|p| p.to_string()).collect())
}

#[pyfunction]
#[pyo3(signature = (text, n = None))]
fn merge(text: &str, n: Option<usize>) -> PyResult<String> {
    Ok(partition(text, n)?.merge().to_string())
}

/// Pair list, bracket product and `v`-basis product of the concordance vector.
#[pyfunction]
#[pyo3(signature = (text, n = None))]
fn wedge_factorization(text: &str, n: Option<usize>) -> PyResult<(String, String, String)> {
    let f = algorithm_factorization(&partition(text, n)?);
    Ok((f.pairs_line(), f.brackets_line(), f.v_line()))
}

#[pyfunction]
#[pyo3(signature = (text, n = None))]
fn lagrangian_extension(text: &str, n: Option<usize>) -> PyResult<String> {
    Ok(lext(&partition(text, n)?).to_string())
}

#[pyfunction]
fn unique_form_dimension(n: usize) -> PyResult<usize> {
    Ok(unique_form_solver(n).map_err(to_py)?.dimension())
}

#[pyfunction]
fn crystal_check(n: usize) -> PyResult<bool> {
    Ok(circnet::lam_action::crystal_check(n).map_err(to_py)?.passed())
}

#[pyfunction]
fn invariance_check(n: usize) -> PyResult<bool> {
    Ok(circnet::lam_action::invariance_check(n).map_err(to_py)?.passed())
}

#[pymodule]
fn circnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(response_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(effective_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(groves, m)?)?;
    m.add_function(wrap_pyfunction!(plucker, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(noncrossing_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(merge, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(lagrangian_extension, m)?)?;
    m.add_function(wrap_pyfunction!(unique_form_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(crystal_check, m)?)?;
    m.add_function(wrap_pyfunction!(invariance_check, m)?)?;
    Ok(())
}
