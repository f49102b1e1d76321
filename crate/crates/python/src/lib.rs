//! Python bindings: `import pyphotocount`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use photocount::counting::{self, Method};
use photocount::oracle::verify as checks;
use photocount::oracle::{self, identities, SamplingRoute};
use photocount::{special_fn, ComparisonReport, Efficiency, QuadratureConfig, StateModel};

fn err(e: photocount::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn efficiency(xi: f64, continued: bool) -> PyResult<Efficiency> {
    if continued {
        Efficiency::continued(xi).map_err(err)
    } else {
        Efficiency::new(xi).map_err(err)
    }
}

fn route(name: &str) -> PyResult<SamplingRoute> {
    match name {
        "fock" => Ok(SamplingRoute::Fock),
        "p-function" => Ok(SamplingRoute::PFunction),
        other => Err(PyValueError::new_err(format!(
            "route must be \"fock\" or \"p-function\" (got {other:?})"
        ))),
    }
}

fn quad(radial_nodes: usize, angular_nodes: usize, abs_tol: f64) -> QuadratureConfig {
    QuadratureConfig {
        radial_nodes,
        angular_nodes,
        abs_tol,
        ..Default::default()
    }
}

/// A single-mode light field.
#[pyclass(name = "State", module = "pyphotocount", frozen, skip_from_py_object)]
struct PyState(StateModel);

#[pymethods]
impl PyState {
    #[staticmethod]
    fn coherent(alpha: Complex64) -> PyResult<Self> {
        StateModel::coherent(alpha).map(PyState).map_err(err)
    }

    #[staticmethod]
    fn thermal(nbar: f64) -> PyResult<Self> {
        StateModel::thermal(nbar).map(PyState).map_err(err)
    }

    #[staticmethod]
    fn squeezed(lam: f64) -> PyResult<Self> {
        StateModel::squeezed_vacuum(lam).map(PyState).map_err(err)
    }

    #[staticmethod]
    fn displaced_thermal(alpha: Complex64, nbar: f64) -> PyResult<Self> {
        StateModel::displaced_thermal(alpha, nbar).map(PyState).map_err(err)
    }

    #[staticmethod]
    fn fock(probs: Vec<f64>) -> PyResult<Self> {
        StateModel::fock_mixture(probs).map(PyState).map_err(err)
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.0.name()
    }

    fn mean_photon(&self) -> f64 {
        self.0.mean_photon()
    }

    /// Photon-number probabilities with neglected mass at most `tail_tol`.
    #[pyo3(signature = (tail_tol = 1e-15))]
    fn fock_distribution(&self, tail_tol: f64) -> PyResult<Vec<f64>> {
        Ok(self.0.fock_distribution(tail_tol).map_err(err)?.probs)
    }

    /// `<-beta| rho |beta>`.
    fn antidiagonal(&self, beta: Complex64) -> Complex64 {
        self.0.antidiagonal_element(beta)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).unwrap()
    }

    fn __repr__(&self) -> String {
        format!("State({})", self.to_json())
    }
}

fn report_dict<'py>(py: Python<'py>, r: &ComparisonReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("check", &r.metadata.check)?;
    d.set_item("reference", &r.reference)?;
    d.set_item("candidate", &r.candidate)?;
    d.set_item("per_m_abs_err", &r.per_m_abs_err)?;
    d.set_item("max_abs_err", r.max_abs_err)?;
    d.set_item("tolerance", r.tolerance)?;
    d.set_item("passed", r.passed)?;
    d.set_item("json", serde_json::to_string(r).unwrap())?;
    Ok(d)
}

/// `p(0..=mmax)` as a dict with `probs`, `trunc_err`, `method`, `mmax`.
#[pyfunction]
#[pyo3(signature = (state, xi, mmax, method = "closed", *, continued = false, tail_tol = 1e-15,
    samples = 1_000_000, seed = 0, route_name = "fock", radial_nodes = 256, angular_nodes = 128, abs_tol = 1e-7))]
#[allow(clippy::too_many_arguments)]
fn distribution<'py>(
    py: Python<'py>,
    state: &PyState,
    xi: f64,
    mmax: usize,
    method: &str,
    continued: bool,
    tail_tol: f64,
    samples: u64,
    seed: u64,
    route_name: &str,
    radial_nodes: usize,
    angular_nodes: usize,
    abs_tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = quad(radial_nodes, angular_nodes, abs_tol);
    let m = match method {
        "closed" => Method::Closed,
        "bernoulli" => Method::Bernoulli { tail_tol },
        "p-quadrature" => Method::PQuadrature(cfg),
        "antidiagonal" => Method::Antidiagonal(cfg),
        "mc" => Method::MonteCarlo {
            samples,
            seed,
            route: route(route_name)?,
        },
        other => {
            return Err(PyValueError::new_err(format!(
                "method must be one of closed, bernoulli, p-quadrature, antidiagonal, mc (got {other:?})"
            )))
        }
    };
    let xi = efficiency(xi, continued || method == "antidiagonal")?;
    let d = py
        .detach(|| counting::distribution(&state.0, xi, mmax, &m))
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("probs", d.probs)?;
    out.set_item("trunc_err", d.trunc_err)?;
    out.set_item("method", d.method.name())?;
    out.set_item("mmax", d.mmax)?;
    Ok(out)
}

#[pyfunction]
fn coherent_closed(alpha: Complex64, xi: f64, m: usize) -> PyResult<f64> {
    counting::coherent_closed(alpha, efficiency(xi, false)?, m).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (nbar, xi, m, continued = false))]
fn thermal_closed(nbar: f64, xi: f64, m: usize, continued: bool) -> PyResult<f64> {
    counting::thermal_closed(nbar, efficiency(xi, continued)?, m).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (lam, xi, m, continued = false))]
fn squeezed_closed(lam: f64, xi: f64, m: usize, continued: bool) -> PyResult<f64> {
    counting::squeezed_closed(lam, efficiency(xi, continued)?, m).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, nbar, xi, m, continued = false))]
fn displaced_thermal_closed(alpha: Complex64, nbar: f64, xi: f64, m: usize, continued: bool) -> PyResult<f64> {
    counting::displaced_thermal_closed(alpha, nbar, efficiency(xi, continued)?, m).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (state, xi, m, radial_nodes = 256, angular_nodes = 128, abs_tol = 1e-7))]
fn p_function_quadrature(
    state: &PyState,
    xi: f64,
    m: usize,
    radial_nodes: usize,
    angular_nodes: usize,
    abs_tol: f64,
) -> PyResult<f64> {
    let cfg = quad(radial_nodes, angular_nodes, abs_tol);
    Ok(oracle::p_function_quadrature(&state.0, efficiency(xi, false)?, m, &cfg)
        .map_err(err)?
        .value)
}

#[pyfunction]
#[pyo3(signature = (state, xi, m, radial_nodes = 256, angular_nodes = 128, abs_tol = 1e-7))]
fn antidiagonal_quadrature(
    state: &PyState,
    xi: f64,
    m: usize,
    radial_nodes: usize,
    angular_nodes: usize,
    abs_tol: f64,
) -> PyResult<f64> {
    let cfg = quad(radial_nodes, angular_nodes, abs_tol);
    Ok(oracle::antidiagonal_quadrature(&state.0, xi, m, &cfg)
        .map_err(err)?
        .value)
}

#[pyfunction]
#[pyo3(signature = (state, xi, samples, seed, mmax, route_name = "fock"))]
fn mc_counts(
    py: Python<'_>,
    state: &PyState,
    xi: f64,
    samples: u64,
    seed: u64,
    mmax: usize,
    route_name: &str,
) -> PyResult<Vec<f64>> {
    let xi = efficiency(xi, false)?;
    let route = route(route_name)?;
    let d = py
        .detach(|| oracle::mc_counts(&state.0, xi, samples, seed, mmax, route))
        .map_err(err)?;
    Ok(d.probs)
}

/// Closed form against `against` (`bernoulli`, `p-quadrature`, `antidiagonal`, `mc`).
#[pyfunction]
#[pyo3(signature = (state, xi, against, mmax = 10, tol = None, samples = 1_000_000, seed = 0, sigmas = 4.0))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    state: &PyState,
    xi: f64,
    against: &str,
    mmax: usize,
    tol: Option<f64>,
    samples: u64,
    seed: u64,
    sigmas: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let s = &state.0;
    let report = match against {
        "bernoulli" => checks::verify_bernoulli(s, efficiency(xi, false)?, mmax, 1e-15, tol.unwrap_or(1e-10)),
        "p-quadrature" => {
            let tol = tol.unwrap_or(1e-7);
            checks::verify_p_quadrature(s, efficiency(xi, false)?, mmax, &QuadratureConfig::with_tol(tol), tol)
        }
        "antidiagonal" => checks::verify_antidiagonal(s, xi, mmax, &QuadratureConfig::default(), tol.unwrap_or(1e-6)),
        "mc" => {
            let xi = efficiency(xi, false)?;
            py.detach(|| checks::verify_monte_carlo(s, xi, mmax, samples, seed, SamplingRoute::Fock, sigmas))
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "against must be one of bernoulli, p-quadrature, antidiagonal, mc (got {other:?})"
            )))
        }
    }
    .map_err(err)?;
    report_dict(py, &report)
}

/// Seeded randomized check of every integral identity.
#[pyfunction]
#[pyo3(signature = (seed = 1, draws = 20, abs_tol = 1e-7))]
fn identity_suite<'py>(py: Python<'py>, seed: u64, draws: usize, abs_tol: f64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reports = identities::run_identity_suite(seed, draws, &QuadratureConfig::with_tol(abs_tol)).map_err(err)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

#[pyfunction]
fn laguerre(m: usize, x: f64) -> PyResult<f64> {
    special_fn::laguerre(m, x).map_err(err)
}

#[pyfunction]
fn legendre_ratio(m: usize, g: f64) -> PyResult<f64> {
    special_fn::legendre_ratio(m, g).map_err(err)
}

#[pymodule]
pub fn pyphotocount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyState>()?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_closed, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_closed, m)?)?;
    m.add_function(wrap_pyfunction!(squeezed_closed, m)?)?;
    m.add_function(wrap_pyfunction!(displaced_thermal_closed, m)?)?;
    m.add_function(wrap_pyfunction!(p_function_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(antidiagonal_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(mc_counts, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identity_suite, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_ratio, m)?)?;
    Ok(())
}
