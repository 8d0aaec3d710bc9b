use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use hyperflow::covolume::{cov_tet as core_cov_tet, GeneralMetric, H_total};
use hyperflow::flow::{curvature as core_curvature, reconstruct_full_metric, InitialMetric};
use hyperflow::quadrature::QuadConfig;
use hyperflow::tetgeom::{self, TetKind, TetLengths};
use hyperflow::{CertifyConfig, Error, FlowConfig, FlowMode};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Numeric(_) => PyArithmeticError::new_err(e.to_string()),
        Error::Logic(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn kind(name: &str) -> PyResult<TetKind> {
    match name {
        "3-1" => Ok(TetKind::ThreeOne),
        "4-0" => Ok(TetKind::FourZero),
        _ => Err(PyValueError::new_err(format!("unknown tetrahedron type {name:?}; use \"3-1\" or \"4-0\""))),
    }
}

/// A parsed gluing table.
#[pyclass(frozen)]
struct Triangulation {
    inner: hyperflow::Triangulation,
}

#[pymethods]
impl Triangulation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = hyperflow::parse_triangulation(text).map_err(py_err)?;
        Ok(Triangulation { inner })
    }

    /// The 12-tetrahedron example manifold.
    #[staticmethod]
    fn m12() -> Self {
        Triangulation {
            inner: hyperflow::parse_triangulation(hyperflow::M12_FIXTURE).expect("bundled fixture parses"),
        }
    }

    #[getter]
    fn tet_count(&self) -> usize {
        self.inner.tet_count()
    }

    #[getter]
    fn edge_class_count(&self) -> usize {
        self.inner.edge_classes().len()
    }

    fn hyper_edge_classes(&self) -> Vec<usize> {
        self.inner.hyper_edge_classes()
    }

    fn ideal_edge_classes(&self) -> Vec<usize> {
        self.inner.ideal_edge_classes()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        serialize(py, &hyperflow::validate(&self.inner))
    }

    /// Curvature of every edge class at a full metric.
    fn curvature(&self, metric: Vec<f64>) -> PyResult<Vec<f64>> {
        let m = GeneralMetric::new(&self.inner, metric).map_err(py_err)?;
        Ok(core_curvature(&m, &self.inner).map_err(py_err)?.values)
    }

    /// Full metric from the hyper-ideal lengths.
    fn reconstruct(&self, hyper: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(reconstruct_full_metric(&hyper, &self.inner).map_err(py_err)?.values)
    }

    #[pyo3(signature = (metric, tol = 1e-13))]
    fn lyapunov(&self, metric: Vec<f64>, tol: f64) -> PyResult<f64> {
        let m = GeneralMetric::new(&self.inner, metric).map_err(py_err)?;
        H_total(&m, &self.inner, &QuadConfig::with_tol(tol)).map_err(py_err)
    }

    #[pyo3(signature = (metric, residual_tol = 1e-8))]
    fn certify<'py>(&self, py: Python<'py>, metric: Vec<f64>, residual_tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let m = GeneralMetric::new(&self.inner, metric).map_err(py_err)?;
        let cfg = CertifyConfig {
            residual_tol,
            ..CertifyConfig::default()
        };
        serialize(py, &hyperflow::certify_limit(&m, &self.inner, &cfg).map_err(py_err)?)
    }

    /// Runs the flow; `l0` is a scalar or one value per flow variable.
    #[pyo3(signature = (mode = "reduced", l0 = None, tol = 1e-10, max_time = 1e4))]
    fn run_flow(&self, mode: &str, l0: Option<Bound<'_, PyAny>>, tol: f64, max_time: f64) -> PyResult<FlowTrace> {
        let mode = match mode {
            "reduced" => FlowMode::Reduced,
            "full" => FlowMode::Full,
            _ => return Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
        };
        let initial = match l0 {
            None => InitialMetric::Constant(0.5 * tetgeom::ARCCOSH_2),
            Some(v) => match v.extract::<f64>() {
                Ok(x) => InitialMetric::Constant(x),
                Err(_) => InitialMetric::Values(v.extract()?),
            },
        };
        let cfg = FlowConfig {
            mode,
            initial,
            stop_tol: tol,
            max_time,
            ..FlowConfig::default()
        };
        let inner = hyperflow::run_flow(&self.inner, &cfg).map_err(py_err)?;
        Ok(FlowTrace { inner })
    }
}

#[pyclass(frozen)]
struct FlowTrace {
    inner: hyperflow::FlowTrace,
}

#[pymethods]
impl FlowTrace {
    /// "converged", "max-time" or "numeric-error".
    #[getter]
    fn termination(&self) -> &'static str {
        match self.inner.termination {
            hyperflow::flow::Termination::Converged => "converged",
            hyperflow::flow::Termination::MaxTime => "max-time",
            hyperflow::flow::Termination::NumericError { .. } => "numeric-error",
        }
    }

    #[getter]
    fn variables(&self) -> Vec<usize> {
        self.inner.variables.clone()
    }

    #[getter]
    fn final_metric(&self) -> Vec<f64> {
        self.inner.final_metric.values.clone()
    }

    #[getter]
    fn final_state(&self) -> Vec<f64> {
        self.inner.last().state.clone()
    }

    #[getter]
    fn final_time(&self) -> f64 {
        self.inner.last().t
    }

    #[getter]
    fn k_inf(&self) -> f64 {
        self.inner.last().k_inf
    }

    #[getter]
    fn banner(&self) -> Option<String> {
        self.inner.banner.clone()
    }

    fn max_h_increase(&self) -> f64 {
        self.inner.max_h_increase()
    }

    /// `(t, H)` pairs of the recorded samples.
    fn lyapunov(&self) -> Vec<(f64, f64)> {
        self.inner.samples.iter().map(|s| (s.t, s.h_line)).collect()
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __len__(&self) -> usize {
        self.inner.samples.len()
    }
}

/// Angle cosines `phi` and extended dihedral angles for one tetrahedron.
#[pyfunction]
fn extended_angles(tet_type: &str, lengths: [f64; 6]) -> PyResult<([f64; 6], [f64; 6])> {
    let a = tetgeom::extended_angles(&TetLengths::new(kind(tet_type)?, lengths)).map_err(py_err)?;
    Ok((a.phi, a.alpha))
}

#[pyfunction]
#[pyo3(signature = (tet_type, lengths, tol = 1e-12))]
fn cov_tet(tet_type: &str, lengths: [f64; 6], tol: f64) -> PyResult<f64> {
    core_cov_tet(&TetLengths::new(kind(tet_type)?, lengths), &QuadConfig::with_tol(tol)).map_err(py_err)
}

/// `(x2, x4, x6)` solving the decoration system for targets `(x1, x3, x5)`.
#[pyfunction]
fn equilateral_inverse(x1: f64, x3: f64, x5: f64) -> PyResult<(f64, f64, f64)> {
    tetgeom::equilateral_inverse(x1, x3, x5).map_err(py_err)
}

/// Decorated 3-1 lengths from the hyper-ideal lengths `[l23, l24, l34]`.
#[pyfunction]
fn equilateral_lengths(hyper: [f64; 3]) -> PyResult<[f64; 6]> {
    Ok(tetgeom::equilateral_lengths(hyper).map_err(py_err)?.to_array())
}

#[pyfunction]
fn phi_x(x: [f64; 6]) -> f64 {
    tetgeom::phi_x(&x)
}

#[pymodule]
fn hyperflow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Triangulation>()?;
    m.add_class::<FlowTrace>()?;
    m.add_function(wrap_pyfunction!(extended_angles, m)?)?;
    m.add_function(wrap_pyfunction!(cov_tet, m)?)?;
    m.add_function(wrap_pyfunction!(equilateral_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(equilateral_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(phi_x, m)?)?;
    m.add("ARCCOSH_2", tetgeom::ARCCOSH_2)?;
    Ok(())
}
