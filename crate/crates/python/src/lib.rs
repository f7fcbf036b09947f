//! Python bindings. Inputs and outputs use the same JSON interchange as
//! the command-line tool; reports come back as Python dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde_json::Value;

use bitwist::cli::{self, DEFAULT_CAP};
use bitwist::surgery::{self, FramedLink};
use bitwist::{examples, heegaard_report, Instance};

fn err(e: bitwist::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn load(text: &str) -> PyResult<Instance> {
    cli::load_instance(text).map_err(err)
}

/// The tetrahedron example as instance JSON.
#[pyfunction]
fn tetra_example() -> String {
    examples::tetra_instance().to_json()
}

/// The doubled scallop with the given multipliers as instance JSON.
#[pyfunction]
fn scallop(multipliers: Vec<i64>) -> PyResult<String> {
    Ok(surgery::scallop(&multipliers).and_then(|d| d.instance()).map_err(err)?.to_json())
}

#[pyfunction]
fn edge_cycles<'py>(py: Python<'py>, instance: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cli::cycles_report(&load(instance)?))
}

#[pyfunction]
#[pyo3(signature = (instance, cap = DEFAULT_CAP))]
fn build<'py>(py: Python<'py>, instance: &str, cap: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cli::build_report(&load(instance)?, cap).map_err(err)?)
}

#[pyfunction]
fn invariants<'py>(py: Python<'py>, instance: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cli::invariants_report(&load(instance)?).map_err(err)?)
}

#[pyfunction]
fn heegaard<'py>(py: Python<'py>, instance: &str) -> PyResult<Bound<'py, PyAny>> {
    let b = bitwist::build(&load(instance)?).map_err(err)?;
    let r = heegaard_report(&b).map_err(err)?;
    to_py(py, &serde_json::to_value(&r).expect("report serializes"))
}

/// (p, q) of the lens space realized by scallop multipliers.
#[pyfunction]
fn lens_from_multipliers(multipliers: Vec<i64>) -> PyResult<(i64, i64)> {
    let l = surgery::lens_from_multipliers(&multipliers).map_err(err)?;
    Ok((l.p, l.q))
}

#[pyfunction]
fn multipliers_from_lens(p: i64, q: i64) -> PyResult<Vec<i64>> {
    Ok(surgery::multipliers_from_lens(p, q).map_err(err)?.m)
}

/// First homology of a framed link given as JSON, e.g. "Z/7".
#[pyfunction]
fn link_h1(link: &str) -> PyResult<String> {
    let l = FramedLink::from_json(link).map_err(err)?;
    Ok(surgery::h1_from_link(&l).map_err(err)?.to_string())
}

/// Simplified link JSON and the list of moves used.
#[pyfunction]
fn simplify_link(link: &str) -> PyResult<(String, Vec<String>)> {
    let l = FramedLink::from_json(link).map_err(err)?;
    let (out, moves) = surgery::simplify(&l).map_err(err)?;
    Ok((out.to_json(), moves))
}

/// Runs the command-line tool in process: (exit code, stdout, stderr).
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("bitwist".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn bitwist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(tetra_example, m)?)?;
    m.add_function(wrap_pyfunction!(scallop, m)?)?;
    m.add_function(wrap_pyfunction!(edge_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(heegaard, m)?)?;
    m.add_function(wrap_pyfunction!(lens_from_multipliers, m)?)?;
    m.add_function(wrap_pyfunction!(multipliers_from_lens, m)?)?;
    m.add_function(wrap_pyfunction!(link_h1, m)?)?;
    m.add_function(wrap_pyfunction!(simplify_link, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
