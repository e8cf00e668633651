//! Python bindings, importable as `kacgap`.
//!
//! Structured results (sector evidence, verify rows, decay fits) come back
//! as plain dicts; exact rationals come back as `fractions.Fraction`.

use kacgap::gapbounds::{self, GapReport, TridiagMatrix};
use kacgap::kspectrum::{self, KappaTable};
use kacgap::montecarlo::{self, InitialDensity, SimOutput};
use kacgap::verify::{self, VerifyOptions, VerifyReport};
use kacgap::Error;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: Error) -> PyErr {
    match e {
        Error::Domain(_)
        | Error::Config(_)
        | Error::CellBudget { .. }
        | Error::UnsupportedAlpha(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Python object for any serializable value, via a JSON round trip.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// `fractions.Fraction` from anything that prints as `p/q` or `p`.
fn fraction<'py>(py: Python<'py>, r: &impl std::fmt::Display) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.to_string(),))
}

#[pyfunction]
fn kappa(n: usize, ell: usize) -> f64 {
    kspectrum::kappa(n, ell)
}

#[pyfunction]
fn kappa_hat(n: usize, ell: usize) -> f64 {
    kspectrum::kappa_hat(n, ell)
}

#[pyfunction]
fn kappa_tilde(n: usize, ell: usize) -> f64 {
    kspectrum::kappa_tilde(n, ell)
}

/// `[kappa(0, ell), ..., kappa(n_max, ell)]`.
#[pyfunction]
fn kappa_row(ell: usize, n_max: usize) -> Vec<f64> {
    kspectrum::kappa_row(ell, n_max)
}

/// `kappa(n, ell)` as an exact `Fraction`.
#[pyfunction]
fn kappa_exact(py: Python<'_>, n: usize, ell: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &kspectrum::kappa_exact(n, ell))
}

#[pyfunction]
fn three_term_coeffs(py: Python<'_>, ell: usize, n: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &kacgap::three_term_coeffs(ell, n))
}

#[pyclass(name = "KappaTable", module = "kacgap", frozen)]
struct PyKappaTable(KappaTable);

#[pymethods]
impl PyKappaTable {
    #[new]
    fn new(py: Python<'_>, n_max: usize, ell_max: usize) -> PyResult<Self> {
        py.detach(|| kspectrum::kappa_table(n_max, ell_max))
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.0.n_max
    }

    #[getter]
    fn ell_max(&self) -> usize {
        self.0.ell_max
    }

    fn get(&self, n: usize, ell: usize) -> PyResult<f64> {
        self.check(n, ell)?;
        Ok(self.0.get(n, ell))
    }

    fn hat(&self, n: usize, ell: usize) -> PyResult<f64> {
        self.check(n, ell)?;
        Ok(self.0.hat(n, ell))
    }

    fn tilde(&self, n: usize, ell: usize) -> PyResult<f64> {
        self.check(n, ell)?;
        Ok(self.0.tilde(n, ell))
    }

    fn row(&self, ell: usize) -> PyResult<Vec<f64>> {
        self.check(0, ell)?;
        Ok(self.0.row(ell).to_vec())
    }

    fn __len__(&self) -> usize {
        self.0.values.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "KappaTable(n_max={}, ell_max={})",
            self.0.n_max, self.0.ell_max
        )
    }
}

impl PyKappaTable {
    fn check(&self, n: usize, ell: usize) -> PyResult<()> {
        if n > self.0.n_max || ell > self.0.ell_max {
            return Err(PyIndexError::new_err(format!("({n}, {ell}) outside table")));
        }
        Ok(())
    }
}

#[pyclass(name = "TridiagMatrix", module = "kacgap", frozen)]
struct PyTridiag(TridiagMatrix);

#[pymethods]
impl PyTridiag {
    #[new]
    fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> PyResult<Self> {
        TridiagMatrix::new(diag, offdiag).map(Self).map_err(err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[pyo3(signature = (tol = gapbounds::tridiag::DEFAULT_TOL))]
    fn top_eigenvalue(&self, tol: f64) -> f64 {
        gapbounds::tridiag_top_eigenvalue(&self.0, tol)
    }

    /// Number of eigenvalues below `x`.
    fn sturm_count(&self, x: f64) -> usize {
        self.0.sturm_count(x)
    }

    fn gershgorin(&self) -> (f64, f64) {
        self.0.gershgorin()
    }
}

#[pyfunction]
fn antisym_bound(t: f64) -> PyResult<f64> {
    gapbounds::antisym_bound(t).map_err(err)
}

/// `(t_star, bound)`.
#[pyfunction]
fn antisym_optimize() -> (f64, f64) {
    gapbounds::antisym_optimize()
}

#[pyfunction]
#[pyo3(signature = (ell = 70))]
fn large_ell_bound(py: Python<'_>, ell: usize) -> PyResult<Bound<'_, PyAny>> {
    let b = py.detach(|| gapbounds::large_ell_bound(ell)).map_err(err)?;
    to_py(py, &b)
}

#[pyfunction]
fn mid_ell_check(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let b = py
        .detach(|| gapbounds::mid_ell_check(gapbounds::MidEllOptions::default()))
        .map_err(err)?;
    to_py(py, &b)
}

#[pyfunction]
fn small_ell_bound(py: Python<'_>, ell: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &gapbounds::small_ell_bound(ell).map_err(err)?)
}

/// Tabulated comparison row for `ell` in `1..=5`.
#[pyfunction]
fn reference_row(py: Python<'_>, ell: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &gapbounds::reference_row(ell).map_err(err)?)
}

#[pyfunction]
fn entropy_production_constant(py: Python<'_>, n: u32, alpha: u32) -> PyResult<Bound<'_, PyAny>> {
    let r = gapbounds::entropy_production_constant(n, alpha).map_err(err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("alpha", r.alpha)?;
    d.set_item("c", fraction(py, &r.c)?)?;
    d.set_item("gap_bound", fraction(py, &r.gap_bound)?)?;
    d.set_item("degenerate", r.degenerate)?;
    Ok(d.into_any())
}

#[pyclass(name = "GapReport", module = "kacgap", frozen)]
struct PyGapReport(GapReport);

#[pymethods]
impl PyGapReport {
    #[getter]
    fn gap(&self) -> f64 {
        self.0.gap
    }

    #[getter]
    fn mu3(&self) -> f64 {
        self.0.mu3
    }

    #[getter]
    fn binding(&self) -> String {
        self.0.binding.to_string()
    }

    /// One dict per sector, with its evidence.
    #[getter]
    fn sectors<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.sectors)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "GapReport(gap={:.7}, mu3={:.7}, binding='{}')",
            self.0.gap, self.0.mu3, self.0.binding
        )
    }
}

#[pyfunction]
fn assemble_gap(py: Python<'_>) -> PyResult<PyGapReport> {
    py.detach(gapbounds::assemble_gap)
        .map(PyGapReport)
        .map_err(err)
}

#[pyclass(name = "SimConfig", module = "kacgap", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySimConfig(montecarlo::SimConfig);

#[pymethods]
impl PySimConfig {
    #[new]
    #[pyo3(signature = (alpha = 2, replicas = 10_000, seed = 0, bins = 100, frames = None, initial = "linear"))]
    fn new(
        alpha: u32,
        replicas: usize,
        seed: u64,
        bins: usize,
        frames: Option<Vec<f64>>,
        initial: &str,
    ) -> PyResult<Self> {
        let mut cfg = montecarlo::SimConfig::new(alpha, replicas, seed);
        cfg.bins = bins;
        cfg.initial = initial.parse::<InitialDensity>().map_err(err)?;
        if let Some(f) = frames {
            cfg.frames = f;
        }
        cfg.validate().map_err(err)?;
        Ok(Self(cfg))
    }

    #[getter]
    fn alpha(&self) -> u32 {
        self.0.alpha
    }

    #[getter]
    fn replicas(&self) -> usize {
        self.0.replicas
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.0.seed
    }

    #[getter]
    fn bins(&self) -> usize {
        self.0.bins
    }

    #[getter]
    fn frames(&self) -> Vec<f64> {
        self.0.frames.clone()
    }

    #[getter]
    fn initial(&self) -> &'static str {
        self.0.initial.name()
    }

    fn __repr__(&self) -> String {
        let c = &self.0;
        format!(
            "SimConfig(alpha={}, replicas={}, seed={}, bins={}, initial='{}', frames={:?})",
            c.alpha,
            c.replicas,
            c.seed,
            c.bins,
            c.initial.name(),
            c.frames
        )
    }
}

#[pyclass(name = "SimResult", module = "kacgap", frozen)]
struct PySimResult(SimOutput);

#[pymethods]
impl PySimResult {
    #[getter]
    fn config(&self) -> PySimConfig {
        PySimConfig(self.0.config.clone())
    }

    #[getter]
    fn total_steps(&self) -> u64 {
        self.0.total_steps
    }

    #[getter]
    fn max_momentum_residual(&self) -> f64 {
        self.0.max_momentum_residual
    }

    #[getter]
    fn max_energy_residual(&self) -> f64 {
        self.0.max_energy_residual
    }

    /// Dict with `times`, `sampled`, `implied1`, `implied2`.
    fn entropy<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.entropy_series().map_err(err)?)
    }

    /// Log-linear decay fit of the sampled-particle entropy, or `None`
    /// when too few frames clear the noise floor.
    fn fit<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match self.0.fit() {
            Ok(f) => Ok(Some(to_py(py, &f)?)),
            Err(Error::InsufficientData { .. }) => Ok(None),
            Err(e) => Err(err(e)),
        }
    }

    /// Normalized density of marginal `k` (0 = sampled) at frame `i`.
    #[pyo3(signature = (i, k = 0))]
    fn density(&self, i: usize, k: usize) -> PyResult<Vec<f64>> {
        let frame = self
            .0
            .frames
            .get(i)
            .ok_or_else(|| PyIndexError::new_err(format!("no frame {i}")))?;
        let h = frame
            .hists
            .get(k)
            .ok_or_else(|| PyIndexError::new_err(format!("no marginal {k}")))?;
        h.density().map_err(err)
    }

    /// Writes histogram CSVs, `entropy.csv` and `summary.json` into `dir`.
    fn write(&self, dir: std::path::PathBuf) -> PyResult<()> {
        kacgap::io::write_simulation(&dir, &self.0)
            .map(|_| ())
            .map_err(err)
    }
}

#[pyfunction]
fn simulate(py: Python<'_>, config: &PySimConfig) -> PyResult<PySimResult> {
    let cfg = config.0.clone();
    py.detach(move || montecarlo::simulate(&cfg))
        .map(PySimResult)
        .map_err(err)
}

#[pyclass(name = "VerifyReport", module = "kacgap", frozen)]
struct PyVerifyReport(VerifyReport);

#[pymethods]
impl PyVerifyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }

    #[getter]
    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.rows)
    }

    fn failures(&self) -> Vec<String> {
        self.0.failures().map(|r| r.name.clone()).collect()
    }

    fn table(&self) -> String {
        self.0.to_table()
    }
}

#[pyfunction]
#[pyo3(signature = (seed = 0, quick = false, skip_statistical = false))]
fn verify_all(py: Python<'_>, seed: u64, quick: bool, skip_statistical: bool) -> PyVerifyReport {
    let opts = VerifyOptions {
        seed,
        quick,
        skip_statistical,
    };
    PyVerifyReport(py.detach(|| verify::verify_all(&opts)))
}

#[pymodule]
#[pyo3(name = "kacgap")]
fn kacgap_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKappaTable>()?;
    m.add_class::<PyTridiag>()?;
    m.add_class::<PyGapReport>()?;
    m.add_class::<PySimConfig>()?;
    m.add_class::<PySimResult>()?;
    m.add_class::<PyVerifyReport>()?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_hat, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_tilde, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_row, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_exact, m)?)?;
    m.add_function(wrap_pyfunction!(three_term_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(antisym_bound, m)?)?;
    m.add_function(wrap_pyfunction!(antisym_optimize, m)?)?;
    m.add_function(wrap_pyfunction!(large_ell_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mid_ell_check, m)?)?;
    m.add_function(wrap_pyfunction!(small_ell_bound, m)?)?;
    m.add_function(wrap_pyfunction!(reference_row, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_production_constant, m)?)?;
    m.add_function(wrap_pyfunction!(assemble_gap, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
