//! Python bindings. Plain data (strata rows, certificates, bounds) comes back
//! as dicts; profiles are wrapped in the `Profile` class.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;
use serde::Serialize;

use segre_core::{SegreError, SegreProfile, StepType, TransformStep};

fn err(e: SegreError) -> PyErr {
    if e.is_overflow() {
        PyOverflowError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_json<T: Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = to_json(value)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A step given either as `"I,II"` or as a list of `"I"`/`"II"` strings.
fn parse_step(step: &Bound<'_, PyAny>) -> PyResult<TransformStep> {
    if let Ok(text) = step.extract::<String>() {
        return text.parse().map_err(err);
    }
    let names: Vec<String> = step.extract()?;
    let types = names
        .iter()
        .map(|n| n.parse::<StepType>())
        .collect::<Result<_, _>>()
        .map_err(err)?;
    TransformStep::new(types).map_err(err)
}

#[pyfunction]
fn hirschowitz_bound(g: i64, r: i64, k: i64) -> PyResult<i64> {
    segre_core::hirschowitz_bound(g, r, k).map_err(err)
}

#[pyfunction]
fn mukai_sakai_bound(g: i64, r: i64, k: i64) -> PyResult<i64> {
    segre_core::mukai_sakai_bound(g, r, k).map_err(err)
}

#[pyfunction]
fn epsilon_k(g: i64, r: i64, d: i64, k: i64) -> PyResult<i64> {
    segre_core::epsilon_k(g, r, d, k).map_err(err)
}

#[pyfunction]
fn s_max(g: i64, r: i64, d: i64, k: i64) -> PyResult<i64> {
    segre_core::s_max(g, r, d, k).map_err(err)
}

#[pyfunction]
fn valid_s(g: i64, r: i64, d: i64, k: i64) -> PyResult<Vec<i64>> {
    segre_core::valid_s(g, r, d, k).map_err(err)
}

#[pyfunction]
fn generic_dim(g: i64, r: i64) -> PyResult<i64> {
    segre_core::generic_dim(g, r).map_err(err)
}

#[pyfunction]
fn stratum_dim(g: i64, r: i64, d: i64, k: i64, s: i64) -> PyResult<i64> {
    segre_core::stratum_dim(g, r, d, k, s).map_err(err)
}

#[pyfunction]
fn maximal_locus_dim(g: i64, r: i64, k: i64, s: i64) -> PyResult<i64> {
    segre_core::maximal_locus_dim(g, r, k, s).map_err(err)
}

#[pyfunction]
fn choose_nk(g: i64, r: i64, k: i64, s: i64) -> PyResult<i64> {
    segre_core::choose_nk(g, r, k, s).map_err(err)
}

/// Rationals come back as `{"num": n, "den": d}`.
#[pyfunction]
fn nested_bounds(py: Python<'_>, r: i64, k: i64, s: i64, nu: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &segre_core::nested_bounds(r, k, s, nu).map_err(err)?)
}

/// One dict per stratum, keyed like the CSV columns.
#[pyfunction]
fn strata(py: Python<'_>, g: i64, r: i64, d: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &segre_core::strata_table(g, r, d).map_err(err)?)
}

#[pyfunction]
fn construct(py: Python<'_>, g: i64, r: i64, d: i64, k: i64, s: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &segre_core::sharp_feasibility(g, r, d, k, s).map_err(err)?)
}

#[pyfunction]
fn construct_json(g: i64, r: i64, d: i64, k: i64, s: i64) -> PyResult<String> {
    to_json(&segre_core::sharp_feasibility(g, r, d, k, s).map_err(err)?)
}

#[pyfunction]
fn dual_step(r: i64, step: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(segre_core::dual_step(r, &parse_step(step)?).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (seed = 0, trials = 1000))]
fn fuzz(py: Python<'_>, seed: u64, trials: u64) -> PyResult<Py<PyAny>> {
    to_py(py, &segre_core::oracle::fuzz_congruence(seed, trials))
}

/// Segre profile `(s_1, ..., s_{r-1})` of a bundle of rank `r` and degree `d`.
#[pyclass(name = "Profile", module = "segre", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Profile(SegreProfile);

#[pymethods]
impl Profile {
    /// The general profile when `s` is omitted.
    #[new]
    #[pyo3(signature = (g, r, d, s = None))]
    fn new(g: i64, r: i64, d: i64, s: Option<Vec<i64>>) -> PyResult<Self> {
        let p = match s {
            Some(s) => SegreProfile::new(g, r, d, s),
            None => SegreProfile::general(g, r, d),
        };
        p.map(Profile).map_err(err)
    }

    #[classmethod]
    fn from_json(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Profile)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn g(&self) -> i64 {
        self.0.g()
    }

    #[getter]
    fn r(&self) -> i64 {
        self.0.r()
    }

    #[getter]
    fn d(&self) -> i64 {
        self.0.d()
    }

    #[getter]
    fn s(&self) -> Vec<i64> {
        self.0.values().to_vec()
    }

    fn apply(&self, step: &Bound<'_, PyAny>) -> PyResult<Self> {
        segre_core::apply_step(&self.0, &parse_step(step)?)
            .map(Profile)
            .map_err(err)
    }

    fn apply_all(&self, steps: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let steps = steps.iter().map(parse_step).collect::<PyResult<Vec<_>>>()?;
        segre_core::apply_steps(&self.0, &steps)
            .map(Profile)
            .map_err(err)
    }

    fn dual(&self) -> Self {
        Profile(segre_core::dual_profile(&self.0))
    }

    fn type_feasible(&self, i: i64, ty: &str) -> PyResult<bool> {
        let ty: StepType = ty.parse().map_err(err)?;
        segre_core::type_feasible(&self.0, i, ty).map_err(err)
    }

    fn within_caps(&self) -> PyResult<bool> {
        self.0.within_caps().map_err(err)
    }

    fn is_stable(&self) -> bool {
        self.0.is_stable()
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile(g={}, r={}, d={}, s={:?})",
            self.0.g(),
            self.0.r(),
            self.0.d(),
            self.0.values()
        )
    }
}

#[pymodule]
fn segre(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Profile>()?;
    m.add_function(wrap_pyfunction!(hirschowitz_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mukai_sakai_bound, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_k, m)?)?;
    m.add_function(wrap_pyfunction!(s_max, m)?)?;
    m.add_function(wrap_pyfunction!(valid_s, m)?)?;
    m.add_function(wrap_pyfunction!(generic_dim, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_dim, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_locus_dim, m)?)?;
    m.add_function(wrap_pyfunction!(choose_nk, m)?)?;
    m.add_function(wrap_pyfunction!(nested_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(strata, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(construct_json, m)?)?;
    m.add_function(wrap_pyfunction!(dual_step, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz, m)?)?;
    Ok(())
}
