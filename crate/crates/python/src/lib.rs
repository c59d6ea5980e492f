//! Python bindings: Γ, B and Euler's symbol in both engines, single identity
//! checks and the suite runner.

use std::collections::BTreeMap;

use engine::identities::{run_check, run_suite as run_suite_core};
use engine::report::{identity_json, render_suite, OutputFormat};
use engine::{
    BetaArgs, Error, EulerSymbolParams, IdentityId, IdentityReport, IntegralEstimate, QuadratureConfig, SuiteGrid,
    SuiteReport, Tolerances,
};
use pyo3::exceptions::{PyArithmeticError, PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(err: Error) -> PyErr {
    match err {
        Error::Domain(_) | Error::InvalidConfig(_) | Error::EmptyGrid => PyValueError::new_err(err.to_string()),
        Error::Overflow { .. } => PyOverflowError::new_err(err.to_string()),
        _ => PyArithmeticError::new_err(err.to_string()),
    }
}

fn parse_id(name: &str) -> PyResult<IdentityId> {
    name.parse().map_err(py_err)
}

/// Tolerances and limits for the tanh-sinh quadrature.
#[pyclass(name = "QuadratureConfig", module = "gamma_mult")]
struct PyQuadratureConfig {
    inner: QuadratureConfig,
}

#[pymethods]
impl PyQuadratureConfig {
    #[new]
    #[pyo3(signature = (abs_tol=None, rel_tol=None, max_refinements=None, truncation_threshold=None))]
    fn new(
        abs_tol: Option<f64>,
        rel_tol: Option<f64>,
        max_refinements: Option<u32>,
        truncation_threshold: Option<f64>,
    ) -> PyResult<Self> {
        let d = QuadratureConfig::default();
        let inner = QuadratureConfig {
            abs_tol: abs_tol.unwrap_or(d.abs_tol),
            rel_tol: rel_tol.unwrap_or(d.rel_tol),
            max_refinements: max_refinements.unwrap_or(d.max_refinements),
            truncation_threshold: truncation_threshold.unwrap_or(d.truncation_threshold),
        };
        inner.validate().map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn abs_tol(&self) -> f64 {
        self.inner.abs_tol
    }

    #[getter]
    fn rel_tol(&self) -> f64 {
        self.inner.rel_tol
    }

    #[getter]
    fn max_refinements(&self) -> u32 {
        self.inner.max_refinements
    }

    #[getter]
    fn truncation_threshold(&self) -> f64 {
        self.inner.truncation_threshold
    }

    fn __repr__(&self) -> String {
        let c = &self.inner;
        format!(
            "QuadratureConfig(abs_tol={:e}, rel_tol={:e}, max_refinements={}, truncation_threshold={:e})",
            c.abs_tol, c.rel_tol, c.max_refinements, c.truncation_threshold
        )
    }
}

fn cfg(config: Option<PyRef<'_, PyQuadratureConfig>>) -> QuadratureConfig {
    config.map(|c| c.inner).unwrap_or_default()
}

/// A quadrature result with its error estimate.
#[pyclass(name = "IntegralEstimate", module = "gamma_mult", frozen)]
struct PyIntegralEstimate {
    inner: IntegralEstimate,
}

#[pymethods]
impl PyIntegralEstimate {
    #[getter]
    fn value(&self) -> f64 {
        self.inner.value
    }

    #[getter]
    fn error_estimate(&self) -> f64 {
        self.inner.error_estimate
    }

    #[getter]
    fn evaluations(&self) -> u64 {
        self.inner.evaluations
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.converged
    }

    fn __float__(&self) -> f64 {
        self.inner.value
    }

    fn __repr__(&self) -> String {
        let e = &self.inner;
        format!(
            "IntegralEstimate(value={}, error_estimate={:e}, evaluations={}, converged={})",
            e.value,
            e.error_estimate,
            e.evaluations,
            if e.converged { "True" } else { "False" }
        )
    }
}

fn estimate(result: engine::Result<IntegralEstimate>) -> PyResult<PyIntegralEstimate> {
    result.map(|inner| PyIntegralEstimate { inner }).map_err(py_err)
}

/// Outcome of one identity check.
#[pyclass(name = "IdentityReport", module = "gamma_mult", frozen)]
struct PyIdentityReport {
    inner: IdentityReport,
}

#[pymethods]
impl PyIdentityReport {
    #[getter]
    fn identity_id(&self) -> &'static str {
        self.inner.identity_id.as_str()
    }

    #[getter]
    fn params(&self) -> BTreeMap<String, f64> {
        self.inner.params.clone()
    }

    #[getter]
    fn lhs(&self) -> f64 {
        self.inner.lhs
    }

    #[getter]
    fn rhs(&self) -> f64 {
        self.inner.rhs
    }

    #[getter]
    fn abs_residual(&self) -> f64 {
        self.inner.abs_residual
    }

    #[getter]
    fn rel_residual(&self) -> f64 {
        self.inner.rel_residual
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.inner.tolerance
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed
    }

    /// `"linear"`, or `"log"` when lhs and rhs hold natural logs.
    #[getter]
    fn scale(&self) -> &'static str {
        match self.inner.scale {
            engine::identities::Scale::Linear => "linear",
            engine::identities::Scale::Log => "log",
        }
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.converged
    }

    #[getter]
    fn error(&self) -> Option<String> {
        self.inner.error.clone()
    }

    fn to_json(&self) -> String {
        identity_json(&self.inner)
    }

    fn __bool__(&self) -> bool {
        self.inner.passed
    }

    fn __repr__(&self) -> String {
        let r = &self.inner;
        format!(
            "IdentityReport({} {}: lhs={}, rhs={}, rel_residual={:e}, tolerance={:e}, passed={})",
            r.identity_id,
            engine::report::params_cell(&r.params),
            r.lhs,
            r.rhs,
            r.rel_residual,
            r.tolerance,
            if r.passed { "True" } else { "False" }
        )
    }
}

/// All reports of a suite run with their pass/fail counts.
#[pyclass(name = "SuiteReport", module = "gamma_mult", frozen)]
struct PySuiteReport {
    inner: SuiteReport,
}

#[pymethods]
impl PySuiteReport {
    #[getter]
    fn reports(&self) -> Vec<PyIdentityReport> {
        self.inner
            .reports
            .iter()
            .map(|r| PyIdentityReport { inner: r.clone() })
            .collect()
    }

    #[getter]
    fn n_pass(&self) -> usize {
        self.inner.n_pass()
    }

    #[getter]
    fn n_fail(&self) -> usize {
        self.inner.n_fail()
    }

    #[getter]
    fn all_passed(&self) -> bool {
        self.inner.all_passed()
    }

    fn to_json(&self) -> String {
        render_suite(&self.inner, OutputFormat::Json)
    }

    fn to_csv(&self) -> String {
        render_suite(&self.inner, OutputFormat::Csv)
    }

    fn to_table(&self) -> String {
        render_suite(&self.inner, OutputFormat::Table)
    }

    fn __len__(&self) -> usize {
        self.inner.reports.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "SuiteReport({} checks: {} passed, {} failed)",
            self.inner.reports.len(),
            self.inner.n_pass(),
            self.inner.n_fail()
        )
    }
}

/// Γ(x) from the Lanczos engine.
#[pyfunction]
fn gamma_reference(x: f64) -> PyResult<f64> {
    engine::gamma_reference(x).map_err(py_err)
}

/// ln Γ(x).
#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    engine::log_gamma(x).map_err(py_err)
}

/// Γ(x) by quadrature of ∫_0^∞ e^{-t} t^{x-1} dt.
#[pyfunction]
#[pyo3(signature = (x, config=None))]
fn gamma_integral(x: f64, config: Option<PyRef<'_, PyQuadratureConfig>>) -> PyResult<PyIntegralEstimate> {
    estimate(engine::gamma_integral(x, &cfg(config)))
}

/// ∫_0^1 (-ln x)^s dx = Γ(s + 1) by quadrature.
#[pyfunction]
#[pyo3(signature = (s, config=None))]
fn gamma_log_integral(s: f64, config: Option<PyRef<'_, PyQuadratureConfig>>) -> PyResult<PyIntegralEstimate> {
    estimate(engine::gamma_log_integral(s, &cfg(config)))
}

/// Euler's bracket [λ] = Γ(1 + λ).
#[pyfunction]
fn factorial_interp(lam: f64) -> PyResult<f64> {
    engine::factorial_interp(lam).map_err(py_err)
}

/// B(x, y) in closed form.
#[pyfunction]
fn beta_closed(x: f64, y: f64) -> PyResult<f64> {
    Ok(engine::beta_closed(BetaArgs::new(x, y).map_err(py_err)?))
}

/// B(x, y) by quadrature.
#[pyfunction]
#[pyo3(signature = (x, y, config=None))]
fn beta_integral(x: f64, y: f64, config: Option<PyRef<'_, PyQuadratureConfig>>) -> PyResult<PyIntegralEstimate> {
    let args = BetaArgs::new(x, y).map_err(py_err)?;
    estimate(engine::beta_integral(args, &cfg(config)))
}

/// Euler's symbol (p/q) with exponent n, by quadrature.
#[pyfunction]
#[pyo3(signature = (p, q, n, config=None))]
fn euler_symbol(p: f64, q: f64, n: u32, config: Option<PyRef<'_, PyQuadratureConfig>>) -> PyResult<PyIntegralEstimate> {
    let params = EulerSymbolParams::new(p, q, n).map_err(py_err)?;
    estimate(engine::euler_symbol(params, &cfg(config)))
}

/// Euler's symbol (p/q) = B(p/n, q/n)/n.
#[pyfunction]
fn euler_symbol_closed(p: f64, q: f64, n: u32) -> PyResult<f64> {
    Ok(engine::euler_symbol_closed(
        EulerSymbolParams::new(p, q, n).map_err(py_err)?,
    ))
}

/// Names of every identity, with the parameters each one takes.
#[pyfunction]
fn identities() -> BTreeMap<&'static str, Vec<&'static str>> {
    IdentityId::ALL
        .iter()
        .map(|id| (id.as_str(), id.axes().to_vec()))
        .collect()
}

/// Runs one identity check, e.g. `verify("gauss-multiplication", n=5, x=3.7)`.
#[pyfunction]
#[pyo3(signature = (identity, *, tolerance=None, config=None, **params))]
fn verify(
    identity: &str,
    tolerance: Option<f64>,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
    params: Option<&Bound<'_, PyDict>>,
) -> PyResult<PyIdentityReport> {
    let id = parse_id(identity)?;
    let params: BTreeMap<String, f64> = match params {
        Some(p) => p.extract()?,
        None => BTreeMap::new(),
    };
    let mut report = run_check(id, &params, &cfg(config)).map_err(py_err)?;
    if let Some(tol) = tolerance {
        report = report.with_tolerance(tol);
    }
    Ok(PyIdentityReport { inner: report })
}

/// Runs the identity suite. Without arguments this is the full default grid.
///
/// `axes` maps a parameter name to the values to use for every identity
/// taking that parameter; `tolerances` maps identity names to overrides.
#[pyfunction]
#[pyo3(signature = (*, only=None, skip=None, axes=None, tolerances=None, config=None, timings=false))]
fn run_suite(
    py: Python<'_>,
    only: Option<Vec<String>>,
    skip: Option<Vec<String>>,
    axes: Option<BTreeMap<String, Vec<f64>>>,
    tolerances: Option<BTreeMap<String, f64>>,
    config: Option<PyRef<'_, PyQuadratureConfig>>,
    timings: bool,
) -> PyResult<PySuiteReport> {
    let mut grid = SuiteGrid::default();
    if let Some(only) = only {
        let keep = only.iter().map(|s| parse_id(s)).collect::<PyResult<Vec<_>>>()?;
        grid.retain(&keep);
    }
    for name in skip.unwrap_or_default() {
        grid.remove(parse_id(&name)?);
    }
    for (axis, values) in axes.unwrap_or_default() {
        grid.set_axis(&axis, &values);
    }
    let mut tols = Tolerances::default();
    for (name, tol) in tolerances.unwrap_or_default() {
        tols.set(parse_id(&name)?, tol);
    }
    let cfg = cfg(config);
    let report = py.detach(|| run_suite_core(&grid, &cfg, &tols)).map_err(py_err)?;
    let inner = if timings { report } else { report.without_timings() };
    Ok(PySuiteReport { inner })
}

#[pymodule]
fn gamma_mult(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadratureConfig>()?;
    m.add_class::<PyIntegralEstimate>()?;
    m.add_class::<PyIdentityReport>()?;
    m.add_class::<PySuiteReport>()?;
    m.add_function(wrap_pyfunction!(gamma_reference, m)?)?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_integral, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_log_integral, m)?)?;
    m.add_function(wrap_pyfunction!(factorial_interp, m)?)?;
    m.add_function(wrap_pyfunction!(beta_closed, m)?)?;
    m.add_function(wrap_pyfunction!(beta_integral, m)?)?;
    m.add_function(wrap_pyfunction!(euler_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(euler_symbol_closed, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
