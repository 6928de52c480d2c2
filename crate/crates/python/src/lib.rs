//! Python bindings for `quadbound`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use quadbound::basis::{build_basis, pairing_table, verify_against_reference};
use quadbound::block::assemble_problem;
use quadbound::oracle::{full_problem, psd_equivalence_trial};
use quadbound::orbit::enumerate_orbits;
use quadbound::sdpa::{bound_from_objectives, parse_solver_output, Scaling, SdpaFile, WriteOptions};
use quadbound::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_) | Error::SdpaParse { .. } | Error::OracleLimit(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, value: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn write_options(scaling: Option<&Bound<'_, PyAny>>, magnitude_cap: u64) -> PyResult<WriteOptions> {
    let scaling = match scaling {
        None => Scaling::Auto,
        Some(s) => {
            if let Ok(k) = s.extract::<i32>() {
                Scaling::Density(k)
            } else {
                match s.extract::<String>()?.as_str() {
                    "auto" => Scaling::Auto,
                    "none" => Scaling::None,
                    other => return Err(PyValueError::new_err(format!("unknown scaling {other:?}"))),
                }
            }
        }
    };
    Ok(WriteOptions { magnitude_cap: magnitude_cap.into(), scaling })
}

/// Reduced (or explicit) SDP for given `q, n, d`.
#[pyclass(name = "SdpProblem", module = "quadbound_py")]
struct PySdpProblem {
    inner: quadbound::block::SdpProblem,
}

#[pymethods]
impl PySdpProblem {
    #[new]
    #[pyo3(signature = (q, n, d, unreduced = false))]
    fn new(q: usize, n: usize, d: usize, unreduced: bool) -> PyResult<Self> {
        let inner = if unreduced { full_problem(q, n, d) } else { assemble_problem(q, n, d) }.map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn params(&self) -> (usize, usize, usize) {
        (self.inner.q, self.inner.n, self.inner.d)
    }

    #[getter]
    fn num_variables(&self) -> usize {
        self.inner.num_variables()
    }

    #[getter]
    fn block_sizes(&self) -> Vec<usize> {
        self.inner.blocks.iter().map(|b| b.size()).collect()
    }

    #[getter]
    fn block_labels(&self) -> Vec<String> {
        self.inner.blocks.iter().map(|b| b.label.clone()).collect()
    }

    /// Catalog orbit index of each variable.
    #[getter]
    fn variables(&self) -> Vec<usize> {
        self.inner.variables.clone()
    }

    /// Objective value at an assignment indexed by catalog orbit.
    fn objective_value(&self, y: Vec<f64>) -> f64 {
        self.inner.objective_value(&y)
    }

    /// Numeric blocks at an assignment indexed by catalog orbit.
    fn evaluate(&self, y: Vec<f64>) -> Vec<Vec<Vec<f64>>> {
        self.inner.blocks.iter().map(|b| b.evaluate(&y)).collect()
    }

    /// Sparse SDPA text. `scaling` is `"auto"`, `"none"` or a density
    /// exponent `k` (reference density `2^k`).
    #[pyo3(signature = (scaling = None, magnitude_cap = 1u64 << 53))]
    fn to_sdpa(&self, scaling: Option<&Bound<'_, PyAny>>, magnitude_cap: u64) -> PyResult<String> {
        Ok(SdpaFile::from_problem(&self.inner, &write_options(scaling, magnitude_cap)?).0.to_text())
    }

    #[pyo3(signature = (scaling = None, magnitude_cap = 1u64 << 53))]
    fn manifest(&self, py: Python<'_>, scaling: Option<&Bound<'_, PyAny>>, magnitude_cap: u64) -> PyResult<Py<PyAny>> {
        let (_, summary) = SdpaFile::from_problem(&self.inner, &write_options(scaling, magnitude_cap)?);
        to_py(py, &self.inner.manifest(&summary))
    }

    /// Bound report from CSDP-style solver output.
    #[pyo3(signature = (stdout, tolerance = 1e-4))]
    fn bound_from_output(&self, py: Python<'_>, stdout: &str, tolerance: f64) -> PyResult<Py<PyAny>> {
        let obj = parse_solver_output(stdout).map_err(err)?;
        to_py(py, &bound_from_objectives(&obj, &self.inner, tolerance, 0.0).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "SdpProblem(q={}, n={}, d={}, variables={}, blocks={})",
            self.inner.q,
            self.inner.n,
            self.inner.d,
            self.inner.num_variables(),
            self.inner.blocks.len()
        )
    }
}

/// Orbit records for `q, n`, with admissibility for distance `d`.
#[pyfunction]
fn orbits(py: Python<'_>, q: usize, n: usize, d: usize) -> PyResult<Py<PyAny>> {
    let catalog = enumerate_orbits(q, n).map_err(err)?;
    to_py(py, &catalog.to_records(d))
}

/// Basis dimensions for alphabet size `q`.
#[pyfunction]
fn basis_dims(q: usize) -> PyResult<Vec<usize>> {
    Ok(build_basis(q).map_err(err)?.dims())
}

#[pyfunction]
fn pairing_records(py: Python<'_>, q: usize) -> PyResult<Py<PyAny>> {
    let basis = build_basis(q).map_err(err)?;
    to_py(py, &pairing_table(&basis).to_records())
}

#[pyfunction]
fn verify_tables(py: Python<'_>, q: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &verify_against_reference(q).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (q, n, d, trials = 100, seed = 0))]
fn psd_trial(py: Python<'_>, q: usize, n: usize, d: usize, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &psd_equivalence_trial(q, n, d, trials, seed).map_err(err)?)
}

#[pymodule]
fn quadbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySdpProblem>()?;
    m.add_function(wrap_pyfunction!(orbits, m)?)?;
    m.add_function(wrap_pyfunction!(basis_dims, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_records, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    m.add_function(wrap_pyfunction!(psd_trial, m)?)?;
    Ok(())
}
