//! Python bindings. Kernels and chains are classes; everything else is a
//! function returning floats or plain dicts.

use lrk_qfi::asymptotics::{self, FitModel, PerturbedFamily};
use lrk_qfi::oracle::{self, TrialConfig};
use lrk_qfi::{ChainParams, Channel, DecayKernel, Error, ProbeSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::SingularMode { .. } | Error::Resource(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Fit { .. } | Error::Numeric(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn channel(name: &str) -> PyResult<Channel> {
    name.parse().map_err(to_py)
}

#[pyclass(name = "DecayKernel", module = "lrk_qfi", frozen)]
struct PyKernel {
    inner: DecayKernel,
}

#[pymethods]
impl PyKernel {
    #[staticmethod]
    fn power(alpha: f64) -> PyResult<Self> {
        Ok(Self { inner: DecayKernel::power_law(alpha).map_err(to_py)? })
    }

    #[staticmethod]
    fn log(alpha: f64) -> PyResult<Self> {
        Ok(Self { inner: DecayKernel::log_law(alpha).map_err(to_py)? })
    }

    /// `values[l - 1]` is the weight at separation `l`.
    #[staticmethod]
    #[pyo3(signature = (values, regularity_order = 1))]
    fn table(values: Vec<f64>, regularity_order: u32) -> PyResult<Self> {
        Ok(Self { inner: DecayKernel::table(values, regularity_order).map_err(to_py)? })
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().to_string()
    }

    #[getter]
    fn alpha(&self) -> Option<f64> {
        self.inner.alpha()
    }

    fn value(&self, l: usize) -> PyResult<f64> {
        self.inner.value(l).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("DecayKernel.{}", self.inner.label())
    }
}

#[pyclass(name = "Chain", module = "lrk_qfi", frozen)]
struct PyChain {
    inner: ChainParams,
}

#[pymethods]
impl PyChain {
    #[new]
    #[pyo3(signature = (n_sites, kernel, j = 1.0, mu = 1.0, delta = 1.0))]
    fn new(n_sites: usize, kernel: &PyKernel, j: f64, mu: f64, delta: f64) -> PyResult<Self> {
        let inner = ChainParams::new(j, mu, delta, n_sites, kernel.inner.clone()).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n_sites(&self) -> usize {
        self.inner.n_sites()
    }

    #[getter]
    fn j(&self) -> f64 {
        self.inner.j
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.inner.mu
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta
    }

    #[getter]
    fn kernel(&self) -> PyKernel {
        PyKernel { inner: self.inner.kernel.clone() }
    }

    fn with_sites(&self, n_sites: usize) -> PyResult<Self> {
        Ok(Self { inner: self.inner.with_sites(n_sites).map_err(to_py)? })
    }

    /// Uncontrolled QFI for `channel` in {"J", "mu", "delta"}.
    fn qfi(&self, channel_name: &str, time: f64) -> PyResult<f64> {
        let probe = ProbeSpec::new(channel(channel_name)?, time).map_err(to_py)?;
        Ok(lrk_qfi::qfi_uncontrolled(&self.inner, &probe).map_err(to_py)?.value)
    }

    /// Optimally controlled bound.
    fn qfi_optimal(&self, channel_name: &str, time: f64) -> PyResult<f64> {
        let probe = ProbeSpec::new(channel(channel_name)?, time).map_err(to_py)?;
        Ok(lrk_qfi::qfi_optimal(&self.inner, &probe).map_err(to_py)?.value)
    }

    /// Same QFI from dense diagonalization; N <= 14.
    fn exact_qfi(&self, channel_name: &str, time: f64) -> PyResult<f64> {
        let probe = ProbeSpec::new(channel(channel_name)?, time).map_err(to_py)?;
        Ok(oracle::exact_qfi(&self.inner, &probe).map_err(to_py)?.qfi)
    }

    /// `ε(k)` on the grid momenta.
    fn dispersion(&self) -> PyResult<Vec<f64>> {
        let grid = lrk_qfi::make_grid(self.inner.n_sites()).map_err(to_py)?;
        grid.momenta()
            .iter()
            .map(|&k| lrk_qfi::dispersion(k, &self.inner))
            .collect::<lrk_qfi::Result<_>>()
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Chain(n_sites={}, kernel={}, j={}, mu={}, delta={})",
            self.inner.n_sites(),
            self.inner.kernel.label(),
            self.inner.j,
            self.inner.mu,
            self.inner.delta
        )
    }
}

/// Antiperiodic momenta `(2n+1)π/N`.
#[pyfunction]
fn momenta(n_sites: usize) -> PyResult<Vec<f64>> {
    Ok(lrk_qfi::make_grid(n_sites).map_err(to_py)?.momenta().to_vec())
}

#[pyfunction]
fn structure_factors(n_sites: usize, kernel: &PyKernel) -> PyResult<Vec<f64>> {
    lrk_qfi::structure_factors(n_sites, &kernel.inner).map_err(to_py)
}

#[pyfunction]
fn gamma(n_sites: usize, kernel: &PyKernel) -> PyResult<f64> {
    lrk_qfi::gamma(n_sites, &kernel.inner).map_err(to_py)
}

#[pyfunction]
fn predict_delta_scaling(kernel: &PyKernel, n_sites: usize) -> PyResult<f64> {
    asymptotics::predict_delta_scaling(&kernel.inner, n_sites).map_err(to_py)
}

#[pyfunction]
fn sine_power_integral(alpha: f64) -> PyResult<f64> {
    asymptotics::sine_power_integral(alpha).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (epsilon, n_sites, family = "power"))]
fn finite_size_window(epsilon: f64, n_sites: usize, family: &str) -> PyResult<f64> {
    let fam = match family {
        "power" => PerturbedFamily::PowerPerturbed,
        "log" => PerturbedFamily::LogPerturbed,
        _ => return Err(PyValueError::new_err(format!("unknown family '{family}'"))),
    };
    Ok(asymptotics::finite_size_window(epsilon, n_sites, fam).map_err(to_py)?.s_factor)
}

fn points(x: &[f64], y: &[f64]) -> PyResult<Vec<(f64, f64)>> {
    if x.len() != y.len() {
        return Err(PyValueError::new_err("x and y differ in length"));
    }
    Ok(x.iter().copied().zip(y.iter().copied()).collect())
}

fn fit_dict<'py>(py: Python<'py>, fit: asymptotics::ScalingFit) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match fit.model {
        FitModel::PowerLaw { exponent, prefactor } => {
            d.set_item("model", "power")?;
            d.set_item("e", exponent)?;
            d.set_item("D", prefactor)?;
        }
        FitModel::PolyLog { a, c, b } => {
            d.set_item("model", "polylog")?;
            d.set_item("A", a)?;
            d.set_item("c", c)?;
            d.set_item("B", b)?;
        }
    }
    d.set_item("residual", fit.residual)?;
    d.set_item("n_points", fit.n_points)?;
    Ok(d)
}

/// `y = D·x^e`.
#[pyfunction]
fn fit_power<'py>(py: Python<'py>, x: Vec<f64>, y: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    fit_dict(py, asymptotics::fit_power(&points(&x, &y)?).map_err(to_py)?)
}

/// `y = A·(ln N)^c + B`.
#[pyfunction]
fn fit_polylog<'py>(py: Python<'py>, n: Vec<f64>, y: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    fit_dict(py, asymptotics::fit_polylog(&points(&n, &y)?).map_err(to_py)?)
}

#[pyfunction]
#[pyo3(signature = (seed = 20_240_601, trials = 50, n_list = vec![2, 4, 6, 8], tol = 1e-8))]
fn oracle_check<'py>(
    py: Python<'py>,
    seed: u64,
    trials: usize,
    n_list: Vec<usize>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = TrialConfig {
        seed,
        trials,
        n_list,
        tolerance: tol,
        ..TrialConfig::default()
    };
    let report = py.detach(|| oracle::run_oracle_trials(&cfg)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("trials", report.trials)?;
    d.set_item("max_rel_err", report.max_rel_err)?;
    d.set_item("failures", report.failures.len())?;
    d.set_item("passed", report.passed())?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "lrk_qfi")]
fn lrk_qfi_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyKernel>()?;
    m.add_class::<PyChain>()?;
    m.add_function(wrap_pyfunction!(momenta, m)?)?;
    m.add_function(wrap_pyfunction!(structure_factors, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(predict_delta_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(sine_power_integral, m)?)?;
    m.add_function(wrap_pyfunction!(finite_size_window, m)?)?;
    m.add_function(wrap_pyfunction!(fit_power, m)?)?;
    m.add_function(wrap_pyfunction!(fit_polylog, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    Ok(())
}
