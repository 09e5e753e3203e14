//! Python bindings for `regsync`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use regsync::sweep::{render, run_sweep, OutputFormat, SweepConfig};
use regsync::sync::DEFAULT_AUDIT_TOL;
use regsync::{DenseMatrix, Error, GraphSpec};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::NonConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn matrix_rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    m.to_rows()
}

/// r-nearest-neighbor cycle or torus.
#[pyclass(name = "GraphSpec", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraphSpec {
    inner: GraphSpec,
}

#[pymethods]
impl PyGraphSpec {
    #[new]
    fn new(family: &str, dims: Vec<usize>, r: usize) -> PyResult<Self> {
        let family = family.parse().map_err(to_py_err)?;
        let inner = GraphSpec::new(family, dims, r).validate().map_err(to_py_err)?;
        Ok(PyGraphSpec { inner })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family.name()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims.clone()
    }

    #[getter]
    fn overhead(&self) -> usize {
        self.inner.overhead
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn adjacency(&self) -> PyResult<Vec<Vec<f64>>> {
        regsync::build_adjacency(&self.inner)
            .map(|m| matrix_rows(&m))
            .map_err(to_py_err)
    }

    fn laplacian(&self) -> PyResult<Vec<Vec<f64>>> {
        regsync::build_laplacian(&self.inner)
            .map(|m| matrix_rows(&m))
            .map_err(to_py_err)
    }

    /// Closed-form eigenvalue at a frequency index.
    fn eigenvalue(&self, index: Vec<usize>) -> PyResult<f64> {
        regsync::torus_eigenvalue(&self.inner, &index.into()).map_err(to_py_err)
    }

    /// `[(index, value), ...]` over the whole frequency grid.
    fn spectrum(&self) -> PyResult<Vec<(Vec<usize>, f64)>> {
        let s = regsync::full_spectrum(&self.inner).map_err(to_py_err)?;
        Ok(s.entries.into_iter().map(|(i, v)| (i.0, v)).collect())
    }

    fn sorted_spectrum(&self) -> PyResult<Vec<f64>> {
        Ok(regsync::full_spectrum(&self.inner)
            .map_err(to_py_err)?
            .sorted_values())
    }

    fn connectivity(&self) -> PyResult<f64> {
        regsync::connectivity(&self.inner).map_err(to_py_err)
    }

    fn sync(&self) -> PyResult<PySyncReport> {
        regsync::sync_exact(&self.inner)
            .map(|inner| PySyncReport { inner })
            .map_err(to_py_err)
    }

    /// `(value, case)` of the closed-form ratio, or `None` for mixed parity.
    fn closed_form_ratio(&self) -> PyResult<Option<(f64, &'static str)>> {
        match regsync::paper_closed_form_r(&self.inner) {
            Ok((v, case)) => Ok(Some((v, case.name()))),
            Err(Error::MixedParity { .. }) => Ok(None),
            Err(e) => Err(to_py_err(e)),
        }
    }

    /// Largest deviation between the closed-form and oracle spectra.
    #[pyo3(signature = (tol=None))]
    fn verify_closed_form(&self, tol: Option<f64>) -> PyResult<f64> {
        regsync::verify_closed_form(&self.inner, tol).map_err(to_py_err)
    }

    #[pyo3(signature = (tol=DEFAULT_AUDIT_TOL))]
    fn verify_theorems<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let rec = regsync::verify_theorems(&self.inner, tol).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("case", rec.case.name())?;
        d.set_item("ratio_exact", rec.ratio_exact)?;
        d.set_item("ratio_paper", rec.ratio_paper)?;
        d.set_item("deviation", rec.deviation)?;
        d.set_item("exact_match", rec.exact_match)?;
        d.set_item("ratio_literal", rec.ratio_literal)?;
        d.set_item("literal_deviation", rec.literal_deviation)?;
        d.set_item("claimed_argmax", rec.claimed_argmax.0)?;
        d.set_item("exact_argmax", rec.exact_argmax.0)?;
        d.set_item("claimed_max_value", rec.claimed_max_value)?;
        d.set_item("lambda_max", rec.lambda_max)?;
        d.set_item("claimed_attains_max", rec.claimed_attains_max)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "GraphSpec('{}', {:?}, r={})",
            self.inner.family, self.inner.dims, self.inner.overhead
        )
    }
}

#[pyclass(name = "SyncReport", frozen)]
pub struct PySyncReport {
    inner: regsync::SyncReport,
}

#[pymethods]
impl PySyncReport {
    #[getter]
    fn lambda_conn(&self) -> f64 {
        self.inner.lambda_conn
    }

    #[getter]
    fn lambda_max(&self) -> f64 {
        self.inner.lambda_max
    }

    #[getter]
    fn ratio_exact(&self) -> f64 {
        self.inner.ratio_exact
    }

    #[getter]
    fn ratio_paper(&self) -> Option<f64> {
        self.inner.ratio_paper
    }

    #[getter]
    fn paper_case(&self) -> Option<&'static str> {
        self.inner.paper_case.map(|c| c.name())
    }

    #[getter]
    fn deviation(&self) -> Option<f64> {
        self.inner.deviation
    }

    #[getter]
    fn argmin_index(&self) -> Vec<usize> {
        self.inner.argmin_index.0.clone()
    }

    #[getter]
    fn argmax_index(&self) -> Vec<usize> {
        self.inner.argmax_index.0.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "SyncReport(lambda_conn={}, lambda_max={}, ratio_exact={})",
            self.inner.lambda_conn, self.inner.lambda_max, self.inner.ratio_exact
        )
    }
}

#[pyfunction]
fn dirichlet_sum(r: usize, theta: f64) -> f64 {
    regsync::dirichlet_sum(r, theta)
}

#[pyfunction]
fn cycle_eigenvalue(n: usize, r: usize, j: usize) -> PyResult<f64> {
    regsync::cycle_eigenvalue(n, r, j).map_err(to_py_err)
}

/// `(eigenvalues, sweeps, off_diagonal_norm)` of a symmetric matrix.
#[pyfunction]
#[pyo3(signature = (matrix, tol=None, max_sweeps=regsync::oracle::DEFAULT_MAX_SWEEPS))]
fn jacobi_eigenvalues(
    matrix: Vec<Vec<f64>>,
    tol: Option<f64>,
    max_sweeps: usize,
) -> PyResult<(Vec<f64>, usize, f64)> {
    let m = DenseMatrix::from_rows(matrix).map_err(to_py_err)?;
    let tol = tol.unwrap_or_else(|| regsync::oracle::default_tolerance(&m));
    let res = regsync::jacobi_eigenvalues(&m, tol, max_sweeps).map_err(to_py_err)?;
    Ok((res.eigenvalues, res.iterations, res.off_diagonal_norm))
}

/// Runs a sweep from config text and returns the rendered CSV or JSON.
#[pyfunction]
#[pyo3(signature = (config, format=None))]
fn sweep(config: &str, format: Option<&str>) -> PyResult<String> {
    let mut cfg = SweepConfig::parse(config).map_err(to_py_err)?;
    if let Some(f) = format {
        cfg.format = f.parse::<OutputFormat>().map_err(to_py_err)?;
    }
    render(&run_sweep(&cfg), cfg.format).map_err(to_py_err)
}

#[pymodule]
pub fn pyregsync(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraphSpec>()?;
    m.add_class::<PySyncReport>()?;
    m.add_function(wrap_pyfunction!(dirichlet_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
