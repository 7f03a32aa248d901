//! Python bindings for `xxchain`.
//!
//! Matrices cross the boundary as nested lists of Python `complex`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use xxchain::numerics::ComplexMatrix4;
use xxchain::scan::{figure_preset, report_json, verify_suite, write_scan_files};
use xxchain::{DensityMatrix, Error, Temperature};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BracketFailure { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

type Matrix = Vec<Vec<Complex64>>;

fn to_rows(m: &ComplexMatrix4) -> Matrix {
    m.0.iter().map(|r| r.to_vec()).collect()
}

fn from_rows(rows: Matrix) -> PyResult<ComplexMatrix4> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(PyValueError::new_err("expected a 4x4 matrix"));
    }
    let mut m = ComplexMatrix4::zeros();
    for (i, r) in rows.iter().enumerate() {
        for (j, z) in r.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    Ok(m)
}

fn density(rows: Matrix) -> PyResult<DensityMatrix> {
    DensityMatrix::new(from_rows(rows)?).map_err(to_py_err)
}

fn temperature(kbt: f64) -> PyResult<Temperature> {
    Temperature::new(kbt).map_err(to_py_err)
}

/// Coupling `j`, uniform field `b` and impurity field `b1` on qubit 1.
#[pyclass(name = "ChainParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyChainParams(xxchain::ChainParams);

#[pymethods]
impl PyChainParams {
    #[new]
    fn new(j: f64, b: f64, b1: f64) -> PyResult<Self> {
        xxchain::ChainParams::new(j, b, b1).map(Self).map_err(to_py_err)
    }

    #[getter]
    fn j(&self) -> f64 {
        self.0.j
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }

    #[getter]
    fn b1(&self) -> f64 {
        self.0.b1
    }

    #[getter]
    fn eta(&self) -> f64 {
        self.0.eta()
    }

    fn __repr__(&self) -> String {
        format!("ChainParams(j={}, b={}, b1={})", self.0.j, self.0.b, self.0.b1)
    }
}

#[pyfunction]
fn hamiltonian(p: PyChainParams) -> Matrix {
    to_rows(&xxchain::build_hamiltonian(&p.0))
}

/// Thermal state; `kbt = 0` gives the ground state.
#[pyfunction]
fn thermal_state(p: PyChainParams, kbt: f64) -> PyResult<Matrix> {
    let rho = xxchain::equilibrium_state(&p.0, &temperature(kbt)?).map_err(to_py_err)?;
    Ok(to_rows(rho.matrix()))
}

#[pyfunction]
fn gibbs_state(p: PyChainParams, kbt: f64) -> PyResult<Matrix> {
    let rho = xxchain::gibbs_oracle(&p.0, &temperature(kbt)?).map_err(to_py_err)?;
    Ok(to_rows(rho.matrix()))
}

#[pyfunction]
fn thermal_coefficients<'py>(py: Python<'py>, p: PyChainParams, kbt: f64) -> PyResult<Bound<'py, PyDict>> {
    let x = xxchain::thermal_coefficients(&p.0, &temperature(kbt)?).map_err(to_py_err)?;
    let d = PyDict::new(py);
    for (k, v) in [("u", x.u), ("v", x.v), ("w1", x.w1), ("w2", x.w2), ("y", x.y), ("z", x.z)] {
        d.set_item(k, v)?;
    }
    Ok(d)
}

/// Concurrence of the thermal state at `kbt`.
#[pyfunction]
fn concurrence(p: PyChainParams, kbt: f64) -> PyResult<f64> {
    xxchain::scan::Observable::Concurrence
        .evaluate(&p.0, kbt)
        .map_err(to_py_err)
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
#[pyfunction]
fn concurrence_of(state: Matrix) -> PyResult<f64> {
    Ok(xxchain::concurrence_wootters(&density(state)?).map_err(to_py_err)?.value())
}

#[pyfunction]
fn singlet_fraction(p: PyChainParams, kbt: f64) -> PyResult<f64> {
    xxchain::scan::Observable::SingletFraction
        .evaluate(&p.0, kbt)
        .map_err(to_py_err)
}

/// Maximal singlet fraction of an arbitrary two-qubit density matrix,
/// from the singular values of its correlation tensor.
#[pyfunction]
fn singlet_fraction_of(state: Matrix) -> PyResult<f64> {
    let t = xxchain::correlation_tensor(&density(state)?).map_err(to_py_err)?;
    Ok(xxchain::singlet_fraction_general(&t))
}

#[pyfunction]
#[pyo3(signature = (state, restarts = 8))]
fn singlet_fraction_search(state: Matrix, restarts: usize) -> PyResult<f64> {
    xxchain::singlet_fraction_oracle(&density(state)?, restarts).map_err(to_py_err)
}

#[pyfunction]
fn fidelity(p: PyChainParams, kbt: f64) -> PyResult<f64> {
    xxchain::scan::Observable::Fidelity.evaluate(&p.0, kbt).map_err(to_py_err)
}

#[pyfunction]
fn optimal_fidelity(singlet_fraction: f64) -> PyResult<f64> {
    xxchain::optimal_fidelity(singlet_fraction).map_err(to_py_err)
}

fn critical_dict<'py>(py: Python<'py>, r: xxchain::CriticalResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.temperature())?;
    d.set_item("exists", r.exists)?;
    d.set_item("iterations", r.iterations)?;
    d.set_item("residual", r.residual)?;
    d.set_item("boundary", r.boundary)?;
    Ok(d)
}

#[pyfunction]
fn entanglement_critical_temp<'py>(py: Python<'py>, j: f64, b1: f64) -> PyResult<Bound<'py, PyDict>> {
    let p = xxchain::ChainParams::new(j, 0.0, b1).map_err(to_py_err)?;
    critical_dict(py, xxchain::entanglement_critical_temp(&p))
}

#[pyfunction]
fn fidelity_critical_temp<'py>(py: Python<'py>, j: f64, b: f64, b1: f64) -> PyResult<Bound<'py, PyDict>> {
    let p = xxchain::ChainParams::new(j, b, b1).map_err(to_py_err)?;
    critical_dict(py, xxchain::fidelity_critical_temp(&p).map_err(to_py_err)?)
}

/// `(b_minus, b_plus)`, the zero-temperature crossings as positive magnitudes.
#[pyfunction]
fn critical_fields(p: PyChainParams) -> (f64, f64) {
    let f = xxchain::critical_fields(&p.0);
    (f.b_minus, f.b_plus)
}

/// `(argmax_b, max_t)` of the fidelity critical temperature over B.
#[pyfunction]
fn envelope(j: f64, b1: f64) -> PyResult<(f64, f64)> {
    let e = xxchain::envelope_extremum(j, b1).map_err(to_py_err)?;
    Ok((e.argmax_b, e.max_t))
}

/// Writes the preset's CSV to `out` and returns the sidecar path.
#[pyfunction]
fn scan_preset(preset: &str, out: std::path::PathBuf) -> PyResult<String> {
    let specs = figure_preset(preset).map_err(to_py_err)?;
    let meta = write_scan_files(&specs, Some(preset), &out).map_err(to_py_err)?;
    Ok(meta.display().to_string())
}

/// Runs the cross-validation suite; returns `(all_passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (seed = 0, draws = 50))]
fn verify(seed: u64, draws: usize) -> PyResult<(bool, String)> {
    let report = verify_suite(seed, draws).map_err(to_py_err)?;
    let text = report_json(&report).map_err(to_py_err)?;
    Ok((report.passed, text))
}

#[pymodule]
fn pyxxchain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", xxchain::VERSION)?;
    m.add("CLASSICAL_FIDELITY", xxchain::CLASSICAL_FIDELITY)?;
    m.add_class::<PyChainParams>()?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_state, m)?)?;
    m.add_function(wrap_pyfunction!(gibbs_state, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence_of, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_fraction_of, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_fraction_search, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_critical_temp, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_critical_temp, m)?)?;
    m.add_function(wrap_pyfunction!(critical_fields, m)?)?;
    m.add_function(wrap_pyfunction!(envelope, m)?)?;
    m.add_function(wrap_pyfunction!(scan_preset, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_shape_is_checked() {
        assert!(from_rows(vec![vec![Complex64::new(0.0, 0.0); 4]; 3]).is_err());
        let m = from_rows(to_rows(&ComplexMatrix4::identity())).unwrap();
        assert_eq!(m, ComplexMatrix4::identity());
    }

    #[test]
    fn module_functions_from_python() {
        Python::attach(|py| {
            let m = PyModule::new(py, "pyxxchain").unwrap();
            pyxxchain(&m).unwrap();
            let p = m.getattr("ChainParams").unwrap().call1((1.0, 0.0, 0.0)).unwrap();
            let c: f64 = m.getattr("concurrence").unwrap().call1((&p, 0.5)).unwrap().extract().unwrap();
            assert!((c - 0.551607).abs() < 1e-6);
            let tc = m.getattr("entanglement_critical_temp").unwrap().call1((1.0, 0.0)).unwrap();
            let v: f64 = tc.get_item("value").unwrap().extract().unwrap();
            assert!((v - 1.134593).abs() < 1e-6);
            let err = m.getattr("optimal_fidelity").unwrap().call1((2.0,)).unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
        });
    }
}
