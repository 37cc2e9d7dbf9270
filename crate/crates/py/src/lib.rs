//! Python bindings: `import quinv`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use quinv_core::bijections::{gamma_traced, theta_traced, varphi_traced, BijectionTrace};
use quinv_core::operators::{range_swap as core_range_swap, row_swap};
use quinv_core::poly::{Stat, Weights};
use quinv_core::statistics::StatBundle;
use quinv_core::verify::{check_filling, ShapeSet, SweepConfig, Theorem, VerificationReport};
use quinv_core::{Partition, DEFAULT_BUDGET};

fn err(e: quinv_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A filling of a Young diagram (French convention, rows listed top first).
#[pyclass(name = "Filling", module = "quinv", eq, hash, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFilling {
    inner: quinv_core::Filling,
}

impl From<quinv_core::Filling> for PyFilling {
    fn from(inner: quinv_core::Filling) -> Self {
        PyFilling { inner }
    }
}

#[pymethods]
impl PyFilling {
    #[new]
    #[pyo3(signature = (rows, bottom_up = false))]
    fn new(rows: Vec<Vec<u32>>, bottom_up: bool) -> PyResult<Self> {
        let f = if bottom_up {
            quinv_core::Filling::from_rows(rows)
        } else {
            quinv_core::Filling::from_rows_top_down(rows)
        };
        f.map(Into::into).map_err(err)
    }

    /// Reads the text form (one row per line, top row first) or a JSON document.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        quinv_core::Filling::parse_any(text).map(Into::into).map_err(err)
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner.rows_top_to_bottom()
    }

    #[getter]
    fn rows_bottom_up(&self) -> Vec<Vec<u32>> {
        self.inner.rows_bottom_up()
    }

    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.inner.shape().parts().to_vec()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn maj(&self) -> usize {
        quinv_core::maj(&self.inner)
    }

    fn inv(&self) -> usize {
        quinv_core::inv(&self.inner)
    }

    fn quinv(&self) -> usize {
        quinv_core::quinv(&self.inner)
    }

    fn ndes_vector(&self) -> Vec<usize> {
        quinv_core::ndes_vector(&self.inner)
    }

    fn reverse(&self) -> Self {
        self.inner.reverse().into()
    }

    fn transpose(&self) -> PyResult<Self> {
        self.inner.transpose().map(Into::into).map_err(err)
    }

    fn is_row_equivalent(&self, other: &PyFilling) -> bool {
        self.inner.is_row_equivalent(&other.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Filling({:?})", self.inner.rows_top_to_bottom())
    }
}

fn stat_dict<'py>(py: Python<'py>, b: &StatBundle) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("maj", b.maj)?;
    d.set_item("inv", b.inv)?;
    d.set_item("quinv", b.quinv)?;
    d.set_item("des", b.des)?;
    d.set_item("ndes_vector", b.ndes_vector.clone())?;
    Ok(d)
}

/// `{"maj", "inv", "quinv", "des", "ndes_vector"}` of a filling.
#[pyfunction]
fn stats<'py>(py: Python<'py>, sigma: &PyFilling) -> PyResult<Bound<'py, PyDict>> {
    stat_dict(py, &StatBundle::of(&sigma.inner))
}

/// Exchanges the entries of columns `col, col+1` in `row`, or in rows `row..=to`.
#[pyfunction]
#[pyo3(signature = (sigma, col, row, to = None))]
fn t(sigma: &PyFilling, col: usize, row: usize, to: Option<usize>) -> PyResult<PyFilling> {
    match to {
        Some(to) => core_range_swap(&sigma.inner, col, row, to),
        None => row_swap(&sigma.inner, col, row),
    }
    .map(Into::into)
    .map_err(err)
}

/// The flip on columns `col, col+1` started at `row` (default: the top).
/// Returns `{"filling", "start_row", "end_row", "identity", "undefined"}`.
#[pyfunction]
#[pyo3(signature = (sigma, col, row = None))]
fn rho<'py>(py: Python<'py>, sigma: &PyFilling, col: usize, row: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let row = row.unwrap_or_else(|| sigma.inner.col_height(col).max(1));
    let r = quinv_core::rho(&sigma.inner, col, row).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("filling", PyFilling::from(r.filling))?;
    d.set_item("start_row", r.start_row)?;
    d.set_item("end_row", r.end_row)?;
    d.set_item("identity", r.identity)?;
    d.set_item("undefined", r.undefined)?;
    Ok(d)
}

#[pyfunction]
fn phi(sigma: &PyFilling, col: usize) -> PyResult<PyFilling> {
    quinv_core::phi(&sigma.inner, col).map(Into::into).map_err(err)
}

#[pyfunction]
fn kappa(sigma: &PyFilling) -> i64 {
    quinv_core::kappa(&sigma.inner)
}

fn traced<'py>(py: Python<'py>, t: BijectionTrace, trace: bool) -> PyResult<Bound<'py, PyAny>> {
    if !trace {
        return Ok(Bound::new(py, PyFilling::from(t.output))?.into_any());
    }
    let doc = t.to_doc();
    let mut steps = Vec::with_capacity(t.steps.len());
    for (s, step) in doc.steps.iter().zip(&t.steps) {
        let d = PyDict::new(py);
        d.set_item("operator", &s.operator)?;
        d.set_item("column", s.column)?;
        d.set_item("rows", s.rows)?;
        d.set_item("after", s.after.clone())?;
        d.set_item("padded", step.after.is_padded())?;
        steps.push(d);
    }
    Ok((PyFilling::from(t.output), steps).into_pyobject(py)?.into_any())
}

/// `gamma(sigma)`; with `trace=True`, `(image, steps)` where each step holds
/// the operator, column, rows and the rows (top first, zeros for padding) after it.
#[pyfunction]
#[pyo3(signature = (sigma, trace = false))]
fn gamma<'py>(py: Python<'py>, sigma: &PyFilling, trace: bool) -> PyResult<Bound<'py, PyAny>> {
    traced(py, gamma_traced(&sigma.inner).map_err(err)?, trace)
}

#[pyfunction]
#[pyo3(signature = (sigma, trace = false))]
fn theta<'py>(py: Python<'py>, sigma: &PyFilling, trace: bool) -> PyResult<Bound<'py, PyAny>> {
    traced(py, theta_traced(&sigma.inner).map_err(err)?, trace)
}

#[pyfunction]
#[pyo3(signature = (sigma, trace = false))]
fn varphi<'py>(py: Python<'py>, sigma: &PyFilling, trace: bool) -> PyResult<Bound<'py, PyAny>> {
    traced(py, varphi_traced(&sigma.inner).map_err(err)?, trace)
}

/// Class generating polynomial in canonical text form. `stats` selects from
/// `maj` (q), `inv` (t) and `quinv` (u, or t when `inv` is absent).
#[pyfunction]
#[pyo3(signature = (sigma, stats = vec!["maj".to_string(), "inv".to_string()], budget = DEFAULT_BUDGET))]
fn class_poly(sigma: &PyFilling, stats: Vec<String>, budget: u128) -> PyResult<String> {
    let mut w = Weights::default();
    for s in &stats {
        match s.as_str() {
            "maj" => w.maj = true,
            "inv" => w.inv = true,
            "quinv" => w.quinv = true,
            other => return Err(PyValueError::new_err(format!("unknown statistic {other:?}"))),
        }
    }
    quinv_core::class_poly(&sigma.inner, w, budget)
        .map(|p| p.to_string())
        .map_err(err)
}

/// `{content tuple: polynomial text}` summed over all fillings of `shape`
/// with entries in `1..=vars`.
#[pyfunction]
#[pyo3(signature = (shape, vars, stat = "inv", budget = DEFAULT_BUDGET))]
fn macdonald<'py>(
    py: Python<'py>,
    shape: Vec<usize>,
    vars: usize,
    stat: &str,
    budget: u128,
) -> PyResult<Bound<'py, PyDict>> {
    let stat = match stat {
        "inv" => Stat::Inv,
        "quinv" => Stat::Quinv,
        other => return Err(PyValueError::new_err(format!("stat must be inv or quinv, not {other:?}"))),
    };
    let shape = Partition::new(shape).map_err(err)?;
    let p = quinv_core::macdonald_poly(&shape, vars, stat, budget).map_err(err)?;
    let d = PyDict::new(py);
    for (content, g) in &p.terms {
        d.set_item(PyTuple::new(py, content)?, g.to_string())?;
    }
    Ok(d)
}

fn report_dict<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("theorem", &r.theorem)?;
    d.set_item("search_space", &r.search_space)?;
    d.set_item("instances", r.instances)?;
    d.set_item("violation_count", r.violation_count)?;
    d.set_item("passed", r.passed())?;
    let mut vs = Vec::with_capacity(r.violations.len());
    for v in &r.violations {
        let e = PyDict::new(py);
        e.set_item("filling", &v.filling)?;
        e.set_item("law", &v.law)?;
        e.set_item("expected", &v.expected)?;
        e.set_item("actual", &v.actual)?;
        vs.push(e);
    }
    d.set_item("violations", vs)?;
    d.set_item("json", r.to_json())?;
    Ok(d)
}

/// Checks `theorem` on one filling, or sweeps `max_size` / `rect=(cols, rows)`
/// / explicit `shapes` with entries up to `max_entry`.
#[pyfunction]
#[pyo3(signature = (
    theorem, filling = None, max_size = None, rect = None, shapes = None,
    max_entry = 3, workers = 1, cap = 10, budget = DEFAULT_BUDGET
))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    theorem: &str,
    filling: Option<&PyFilling>,
    max_size: Option<usize>,
    rect: Option<(usize, usize)>,
    shapes: Option<Vec<Vec<usize>>>,
    max_entry: u32,
    workers: usize,
    cap: usize,
    budget: u128,
) -> PyResult<Bound<'py, PyDict>> {
    let theorem: Theorem = theorem.parse().map_err(err)?;
    if let Some(f) = filling {
        let sigma = f.inner.clone();
        let report = py
            .detach(|| check_filling(theorem, &sigma, budget, cap))
            .map_err(err)?;
        return report_dict(py, &report);
    }
    let set = match (max_size, rect, shapes) {
        (Some(n), None, None) => ShapeSet::UpToSize(n),
        (None, Some((c, r)), None) => ShapeSet::Rectangles { max_cols: c, max_rows: r },
        (None, None, Some(v)) => ShapeSet::Exact(
            v.into_iter()
                .map(Partition::new)
                .collect::<Result<_, _>>()
                .map_err(err)?,
        ),
        (None, None, None) => ShapeSet::Exact(Vec::new()),
        _ => return Err(PyValueError::new_err("give at most one of max_size, rect, shapes")),
    };
    let mut cfg = SweepConfig::new(set, max_entry).workers(workers);
    cfg.violation_cap = cap;
    cfg.budget = budget;
    let report = py.detach(|| quinv_core::sweep(theorem, &cfg)).map_err(err)?;
    report_dict(py, &report)
}

#[pymodule]
fn quinv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFilling>()?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(t, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(varphi, m)?)?;
    m.add_function(wrap_pyfunction!(class_poly, m)?)?;
    m.add_function(wrap_pyfunction!(macdonald, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
