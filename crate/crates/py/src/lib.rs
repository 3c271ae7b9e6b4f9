//! Python bindings: the X-state correlation stack, the dephasing kernel,
//! trajectory evolution, regime scans, and the measurement oracle.
//!
//! Build with `cargo build --release -p dephase-py`; the smoke test in
//! `python/smoke_test.py` loads the resulting shared library directly.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dephase::geometry::{QubitGeometry, SubstrateContext, Vec3};
use dephase::oracle::{densify, maximize_classical, OracleGrid};
use dephase::regime::{self, RegimeReport};
use dephase::trajectory::{time_grid, Trajectory};
use dephase::xstate::XState;

fn to_py_err(err: dephase::Error) -> PyErr {
    use dephase::Error;
    match err {
        Error::Quadrature { .. }
        | Error::NoBracket { .. }
        | Error::NotStationary { .. }
        | Error::TrajectoryTooCoarse { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

/// Two-qubit X state carried as (p, b, c).
#[pyclass(name = "XState")]
struct PyXState {
    inner: XState,
}

#[pymethods]
impl PyXState {
    #[new]
    fn new(p: f64, b: f64, c: f64) -> PyResult<Self> {
        Ok(Self { inner: XState::new(p, b, c).map_err(to_py_err)? })
    }

    /// The initial Bell mixture: b = p, c = 1 - p.
    #[staticmethod]
    fn bell_mixture(p: f64) -> PyResult<Self> {
        Ok(Self { inner: XState::bell_mixture(p).map_err(to_py_err)? })
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b()
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c()
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a()
    }

    fn classical_correlation(&self) -> f64 {
        self.inner.classical_correlation()
    }

    fn quantum_discord(&self) -> f64 {
        self.inner.quantum_discord()
    }

    fn mutual_information(&self) -> f64 {
        self.inner.mutual_information()
    }

    fn joint_entropy(&self) -> f64 {
        self.inner.joint_entropy()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues().to_vec()
    }

    /// Preferred-basis label: "Z", "X", or "DEG".
    fn basis_label(&self) -> &'static str {
        regime::classify_basis(&self.inner).as_str()
    }

    /// Maximize the extracted classical information over projective bases
    /// on B using the dense 4x4 path. Returns (value, theta, phi).
    #[pyo3(signature = (n_theta=181, n_phi=361, refine_tol=1e-9))]
    fn maximize_classical(
        &self,
        n_theta: usize,
        n_phi: usize,
        refine_tol: f64,
    ) -> PyResult<(f64, f64, f64)> {
        let rho = densify(&self.inner);
        let grid = OracleGrid { n_theta, n_phi };
        let (value, basis) = maximize_classical(&rho, grid, refine_tol).map_err(to_py_err)?;
        Ok((value, basis.theta(), basis.phi()))
    }

    fn __repr__(&self) -> String {
        format!(
            "XState(p={}, b={}, c={})",
            self.inner.p(),
            self.inner.b(),
            self.inner.c()
        )
    }
}

/// Donor layout of the two charge qubits, vectors in Bohr radii.
#[pyclass(name = "QubitGeometry")]
struct PyQubitGeometry {
    inner: QubitGeometry,
}

#[pymethods]
impl PyQubitGeometry {
    #[new]
    fn new(r1: [f64; 3], r2: [f64; 3], d1: [f64; 3], d2: [f64; 3]) -> PyResult<Self> {
        let inner =
            QubitGeometry::new(Vec3::from(r1), Vec3::from(r2), Vec3::from(d1), Vec3::from(d2))
                .map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// The default configuration: separation 20, inter-donor distances 10,
    /// 45 degrees between the inter-donor vectors.
    #[staticmethod]
    fn default() -> Self {
        Self { inner: QubitGeometry::default() }
    }

    fn donor_positions(&self) -> Vec<[f64; 3]> {
        self.inner.donor_positions().into_iter().map(<[f64; 3]>::from).collect()
    }

    fn distance_set(&self) -> Vec<f64> {
        self.inner.distance_set().values().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "QubitGeometry(r1={:?}, r2={:?}, d1={:?}, d2={:?})",
            <[f64; 3]>::from(self.inner.r1()),
            <[f64; 3]>::from(self.inner.r2()),
            <[f64; 3]>::from(self.inner.d1()),
            <[f64; 3]>::from(self.inner.d2())
        )
    }
}

/// Inter-donor dephasing rate gamma(t; l) at temperature ratio tau.
#[pyfunction]
fn gamma_point(t: f64, l: f64, tau: f64) -> PyResult<f64> {
    dephase::kernel::gamma_point(t, l, tau).map_err(to_py_err)
}

/// Binary split entropy K(x) in bits.
#[pyfunction]
fn k_function(x: f64) -> PyResult<f64> {
    dephase::xstate::k_function(x).map_err(to_py_err)
}

fn simulate(
    geometry: &PyQubitGeometry,
    tau: f64,
    p: f64,
    t_max: f64,
    points: usize,
) -> PyResult<Trajectory> {
    let ctx = SubstrateContext::new(tau).map_err(to_py_err)?;
    let grid = time_grid(t_max, points).map_err(to_py_err)?;
    Trajectory::simulate(&geometry.inner, &ctx, p, &grid).map_err(to_py_err)
}

/// Evolve the initial Bell mixture and return one row per grid time:
/// (t, b, c, C, D, I, S, basis).
#[pyfunction]
#[pyo3(signature = (geometry, tau, p, t_max=400.0, points=4000))]
fn evolve(
    geometry: &PyQubitGeometry,
    tau: f64,
    p: f64,
    t_max: f64,
    points: usize,
) -> PyResult<Vec<(f64, f64, f64, f64, f64, f64, f64, &'static str)>> {
    let traj = simulate(geometry, tau, p, t_max, points)?;
    Ok(traj
        .points()
        .iter()
        .zip(traj.states())
        .map(|(pt, state)| {
            (
                pt.t,
                pt.b,
                pt.c,
                pt.classical,
                pt.discord,
                pt.mutual_information,
                pt.entropy,
                regime::classify_basis(state).as_str(),
            )
        })
        .collect())
}

fn report_to_dict<'py>(py: Python<'py>, report: &RegimeReport) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("crossings", report.crossings.clone())?;
    dict.set_item("plateaus", report.plateaus.clone())?;
    dict.set_item("metastable_count", report.metastable_count)?;
    dict.set_item("asymptotic_basis", report.asymptotic_basis.as_str())?;
    dict.set_item("entropy_maxima", report.entropy_maxima.clone())?;
    Ok(dict)
}

/// Evolve one trajectory and scan it for crossings, plateaus, and entropy
/// maxima. Returns a dict.
#[pyfunction]
#[pyo3(signature = (geometry, tau, p, t_max=400.0, points=4000))]
fn scan_regimes<'py>(
    py: Python<'py>,
    geometry: &PyQubitGeometry,
    tau: f64,
    p: f64,
    t_max: f64,
    points: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let traj = simulate(geometry, tau, p, t_max, points)?;
    let report = regime::scan_regimes(&traj).map_err(to_py_err)?;
    report_to_dict(py, &report)
}

/// Order-of-magnitude pointer-transition temperature, -ln|2p-1| / (16 pi).
#[pyfunction]
fn pointer_temperature_estimate(p: f64) -> PyResult<f64> {
    regime::pointer_temperature_estimate(p).map_err(to_py_err)
}

/// Bisected temperature where the asymptotic basis flips between sigma_x
/// and sigma_z.
#[pyfunction]
#[pyo3(signature = (geometry, p, t_stationary=400.0, bracket=(1e-4, 2.0)))]
fn crossover_temperature(
    geometry: &PyQubitGeometry,
    p: f64,
    t_stationary: f64,
    bracket: (f64, f64),
) -> PyResult<f64> {
    regime::crossover_temperature(&geometry.inner, p, t_stationary, bracket).map_err(to_py_err)
}

#[pymodule]
fn dephase_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyXState>()?;
    m.add_class::<PyQubitGeometry>()?;
    m.add_function(wrap_pyfunction!(gamma_point, m)?)?;
    m.add_function(wrap_pyfunction!(k_function, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(scan_regimes, m)?)?;
    m.add_function(wrap_pyfunction!(pointer_temperature_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_temperature, m)?)?;
    Ok(())
}
