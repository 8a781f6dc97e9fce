use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use spexlab_core::search::{self, Mode, SearchConfig};
use spexlab_core::{
    canon, cli, core_eta, graph6, oracle, patterns, spectral, Error, PatternSpec, VertexSet,
};

fn err(e: Error) -> PyErr {
    match e {
        Error::Format(_) | Error::Argument(_) | Error::Config(_) | Error::Capacity { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
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

fn report<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn pattern(s: &str) -> PyResult<PatternSpec> {
    s.parse::<PatternSpec>().map_err(err)
}

fn vertex_set(vs: Vec<usize>) -> PyResult<VertexSet> {
    if let Some(&v) = vs.iter().find(|&&v| v >= spexlab_core::MAX_VERTICES) {
        return Err(PyValueError::new_err(format!("vertex {v} out of range")));
    }
    Ok(VertexSet::from_iter(vs))
}

/// Simple undirected graph on at most 62 vertices.
#[pyclass(frozen, eq, skip_from_py_object, module = "spexlab")]
#[derive(Clone, PartialEq)]
struct Graph {
    inner: spexlab_core::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = spexlab_core::Graph::from_edges(n, &edges).map_err(err)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        let inner = graph6::decode(s.trim()).map_err(err)?;
        Ok(Graph { inner })
    }

    /// `family(name, *params)`, e.g. `Graph.family("fan", 5)`.
    #[staticmethod]
    #[pyo3(signature = (name, *params))]
    fn family(name: &str, params: Vec<usize>) -> PyResult<Self> {
        let mut graphs = cli::generate(name, &params).map_err(err)?;
        match graphs.len() {
            1 => Ok(Graph {
                inner: graphs.remove(0),
            }),
            _ => Err(PyValueError::new_err(format!(
                "{name} names several graphs; use families()"
            ))),
        }
    }

    fn graph6(&self) -> String {
        graph6::encode(&self.inner)
    }

    fn canonical_form(&self) -> String {
        canon::canonical_form(&self.inner).as_str().to_string()
    }

    fn isomorphic(&self, other: &Graph) -> bool {
        canon::isomorphic(&self.inner, &other.inner)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<usize>> {
        self.check(u)?;
        Ok(self.inner.neighbors(u).to_vec())
    }

    fn degree(&self, u: usize) -> PyResult<usize> {
        self.check(u)?;
        Ok(self.inner.degree(u))
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.inner.has_edge(u, v))
    }

    fn add_edge(&self, u: usize, v: usize) -> PyResult<Graph> {
        let inner = self.inner.add_edge(u, v).map_err(err)?;
        Ok(Graph { inner })
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn join(&self, other: &Graph) -> PyResult<Graph> {
        let inner = self.inner.join(&other.inner).map_err(err)?;
        Ok(Graph { inner })
    }

    fn disjoint_union(&self, other: &Graph) -> PyResult<Graph> {
        let inner = self.inner.disjoint_union(&other.inner).map_err(err)?;
        Ok(Graph { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Graph.from_graph6({:?})", graph6::encode(&self.inner))
    }
}

impl Graph {
    fn check(&self, u: usize) -> PyResult<()> {
        if u >= self.inner.order() {
            return Err(PyValueError::new_err(format!("vertex {u} out of range")));
        }
        Ok(())
    }
}

#[pyfunction]
fn families(name: &str, params: Vec<usize>) -> PyResult<Vec<Graph>> {
    let graphs = cli::generate(name, &params).map_err(err)?;
    Ok(graphs.into_iter().map(|inner| Graph { inner }).collect())
}

#[pyfunction]
fn lambda_max(g: &Graph) -> PyResult<f64> {
    spectral::lambda_max(&g.inner).map_err(err)
}

/// λ₁, Perron vector, λ₂ and the extremal vertex as a dict.
#[pyfunction]
fn spectral_radius<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyAny>> {
    report(py, &spectral::spectral_radius(&g.inner).map_err(err)?)
}

#[pyfunction]
fn spectrum(g: &Graph) -> PyResult<Vec<f64>> {
    spectral::full_spectrum(&g.inner).map_err(err)
}

/// Witness map (pattern vertex → host vertex) or None.
#[pyfunction]
fn find(g: &Graph, spec: &str) -> PyResult<Option<Vec<usize>>> {
    let w = patterns::contains(&g.inner, &pattern(spec)?).map_err(err)?;
    Ok(w.map(|w| w.map))
}

#[pyfunction]
fn is_free(g: &Graph, spec: &str) -> PyResult<bool> {
    patterns::is_free(&g.inner, &pattern(spec)?).map_err(err)
}

#[pyfunction]
fn k_core(g: &Graph, k: usize) -> Vec<usize> {
    core_eta::k_core(&g.inner, k).core.to_vec()
}

/// Decomposition around the extremal vertex with component classes and slacks.
#[pyfunction]
fn decompose<'py>(py: Python<'py>, g: &Graph, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let ctx = core_eta::decompose(&g.inner, k).map_err(err)?;
    let classes = core_eta::classify_components(&ctx).map_err(err)?;
    let slacks = core_eta::slack_report(&ctx).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("context", report(py, &ctx)?)?;
    dict.set_item("components", report(py, &classes)?)?;
    dict.set_item("slacks", report(py, &slacks)?)?;
    Ok(dict.into_any())
}

#[pyfunction]
fn eta<'py>(py: Python<'py>, g: &Graph, k: usize, set: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let ctx = core_eta::decompose(&g.inner, k).map_err(err)?;
    report(
        py,
        &core_eta::eta_core_inequality(&ctx, vertex_set(set)?).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (m, pattern = None, n_max = None, connected = true, hill_climb = false, seed = 0))]
fn extremal_search<'py>(
    py: Python<'py>,
    m: usize,
    pattern: Option<&str>,
    n_max: Option<usize>,
    connected: bool,
    hill_climb: bool,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = SearchConfig::new(m);
    if let Some(p) = pattern {
        cfg = cfg.with_pattern(self::pattern(p)?);
    }
    if let Some(n) = n_max {
        cfg = cfg.with_n_max(n);
    }
    cfg.connected_only = connected;
    cfg.seed = seed;
    let result = if hill_climb {
        cfg.mode = Mode::HillClimb;
        let star = spexlab_core::families::complete_bipartite(1, m).map_err(err)?;
        py.detach(|| search::hill_climb(&cfg, &star))
    } else {
        py.detach(|| search::extremal_search(&cfg))
    };
    report(py, &result.map_err(err)?)
}

/// `bound` uses the CLI grammar: nosal, lnw, fan:K, f23, bh, nikiforov:R.
#[pyfunction]
#[pyo3(signature = (bound, m, n_max = None))]
fn verify_bound<'py>(
    py: Python<'py>,
    bound: &str,
    m: usize,
    n_max: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = cli::parse_bound(bound, m).map_err(err)?;
    let mut cfg = SearchConfig::new(m);
    if let Some(n) = n_max {
        cfg = cfg.with_n_max(n);
    }
    let result = py
        .detach(|| search::verify_bound(spec, &cfg))
        .map_err(err)?;
    report(py, &result)
}

#[pyfunction]
#[pyo3(signature = (g, k, tolerance = 1e-6))]
fn trace_inequality<'py>(
    py: Python<'py>,
    g: &Graph,
    k: u32,
    tolerance: f64,
) -> PyResult<Bound<'py, PyAny>> {
    report(
        py,
        &spectral::trace_inequality(&g.inner, k, tolerance).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn selftest<'py>(py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let checks = py.detach(|| oracle::selftest(seed)).map_err(err)?;
    report(py, &checks)
}

#[pymodule]
fn spexlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_max, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_radius, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(find, m)?)?;
    m.add_function(wrap_pyfunction!(is_free, m)?)?;
    m.add_function(wrap_pyfunction!(k_core, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_search, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bound, m)?)?;
    m.add_function(wrap_pyfunction!(trace_inequality, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
