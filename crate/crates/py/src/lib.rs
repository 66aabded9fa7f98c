//! Python bindings. Nodes are written as `"a:3"` / `"b:0"` strings, the same
//! notation the CLI and network files use.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use interdep::design;
use interdep::exact::{self, Method};
use interdep::generators;
use interdep::heuristics::{self, HeuristicResult, SaParams};
use interdep::{InterdependentNetwork, NodeRef, NodeSet};

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn names(set: &NodeSet) -> Vec<String> {
    set.iter().map(|n| n.to_string()).collect()
}

fn parse_nodes(nodes: Vec<String>) -> PyResult<NodeSet> {
    let mut set = NodeSet::new();
    for s in nodes {
        set.insert(s.parse::<NodeRef>().map_err(py_err)?);
    }
    Ok(set)
}

/// An interdependent network of two sides, A and B.
#[pyclass(frozen, skip_from_py_object, name = "Network", module = "pyinterdep")]
#[derive(Clone)]
pub struct Network {
    inner: InterdependentNetwork,
}

impl From<InterdependentNetwork> for Network {
    fn from(inner: InterdependentNetwork) -> Self {
        Network { inner }
    }
}

#[pymethods]
impl Network {
    /// Bidirectional star network from `(a, b)` interdependency pairs.
    #[staticmethod]
    fn from_edges(n_a: usize, n_b: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        InterdependentNetwork::bidirectional_star(n_a, n_b, edges)
            .map(Network::from)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        text.parse::<InterdependentNetwork>()
            .map(Network::from)
            .map_err(py_err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        InterdependentNetwork::load(path)
            .map(Network::from)
            .map_err(py_err)
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.inner.save(path).map_err(py_err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n_a(&self) -> usize {
        self.inner.n_a()
    }

    #[getter]
    fn n_b(&self) -> usize {
        self.inner.n_b()
    }

    /// A→B edges as `(a, b)` pairs.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges_ab().to_vec()
    }

    /// Operating-rule violations; empty when the network is valid.
    fn validate(&self) -> Vec<String> {
        self.inner
            .validate()
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(n_a={}, n_b={})",
            self.inner.n_a(),
            self.inner.n_b()
        )
    }
}

/// Runs the cascade; returns `(failed, stage_count)` with failures as node names.
#[pyfunction]
fn cascade(net: &Network, remove: Vec<String>) -> PyResult<(Vec<String>, usize)> {
    let removal = parse_nodes(remove)?;
    let r = interdep::cascade(&net.inner, &removal).map_err(py_err)?;
    Ok((names(&r.failed()), r.stage_count))
}

/// Exact `MR(d)`; `method` is `"exact"` or `"bnb"`. Returns `(value, witness)`.
#[pyfunction]
#[pyo3(signature = (net, d, method = "exact"))]
fn mr(net: &Network, d: usize, method: &str) -> PyResult<(usize, Vec<String>)> {
    let r = match Method::parse(method) {
        Some(Method::Exact) => exact::mr_exact(&net.inner, d),
        Some(Method::Bnb) => exact::mr_branch_and_bound(&net.inner, d),
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown exact method {method:?}"
            )))
        }
    }
    .map_err(py_err)?;
    Ok((r.value, names(&r.witness)))
}

/// `MR(d)` for every `d = 0..=n_b`.
#[pyfunction]
fn mr_curve(net: &Network) -> PyResult<Vec<usize>> {
    exact::mr_curve(&net.inner)
        .map(|c| c.values)
        .map_err(py_err)
}

/// Exact `MRB(d)`, removals from both sides. Returns `(value, witness)`.
#[pyfunction]
fn mrb(net: &Network, d: usize) -> PyResult<(usize, Vec<String>)> {
    let r = exact::mrb_exact_with_witness(&net.inner, d).map_err(py_err)?;
    Ok((r.value, names(&r.witness)))
}

fn heuristic_out(r: interdep::Result<HeuristicResult>) -> PyResult<(usize, Vec<String>)> {
    let r = r.map_err(py_err)?;
    Ok((r.size, names(&r.removal)))
}

#[pyfunction]
#[pyo3(signature = (net, d, seed = 0))]
fn greedy(net: &Network, d: usize, seed: u64) -> PyResult<(usize, Vec<String>)> {
    heuristic_out(heuristics::greedy(&net.inner, d, seed))
}

#[pyfunction]
#[pyo3(signature = (net, d, seed = 0, trials = heuristics::DEFAULT_TRIALS))]
fn rounding(net: &Network, d: usize, seed: u64, trials: usize) -> PyResult<(usize, Vec<String>)> {
    heuristic_out(heuristics::randomized_rounding(&net.inner, d, seed, trials))
}

fn sa_params(
    seed: u64,
    t0: Option<f64>,
    tf: Option<f64>,
    r: Option<f64>,
    inner_loop: Option<usize>,
) -> SaParams {
    let d = SaParams::with_seed(seed);
    SaParams {
        t_initial: t0.unwrap_or(d.t_initial),
        t_final: tf.unwrap_or(d.t_final),
        r: r.unwrap_or(d.r),
        inner_loop: inner_loop.or(d.inner_loop),
        seed,
    }
}

#[pyfunction]
#[pyo3(signature = (net, d, seed = 0, t0 = None, tf = None, r = None, inner_loop = None))]
fn sa1(
    net: &Network,
    d: usize,
    seed: u64,
    t0: Option<f64>,
    tf: Option<f64>,
    r: Option<f64>,
    inner_loop: Option<usize>,
) -> PyResult<(usize, Vec<String>)> {
    let p = sa_params(seed, t0, tf, r, inner_loop);
    heuristic_out(heuristics::sa1(&net.inner, d, &p, None))
}

#[pyfunction]
#[pyo3(signature = (net, d, seed = 0, t0 = None, tf = None, r = None, inner_loop = None))]
fn sa2(
    net: &Network,
    d: usize,
    seed: u64,
    t0: Option<f64>,
    tf: Option<f64>,
    r: Option<f64>,
    inner_loop: Option<usize>,
) -> PyResult<(usize, Vec<String>)> {
    let p = sa_params(seed, t0, tf, r, inner_loop);
    heuristic_out(heuristics::sa2(&net.inner, d, &p, None))
}

#[pyfunction]
#[pyo3(signature = (n, k, seed = 0))]
fn gen_type1(n: usize, k: f64, seed: u64) -> PyResult<Network> {
    generators::gen_type1(n, k, seed)
        .map(Network::from)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, k1, k2, seed = 0))]
fn gen_type2(n: usize, k1: f64, k2: f64, seed: u64) -> PyResult<Network> {
    generators::gen_type2(n, k1, k2, seed)
        .map(Network::from)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, k, seed = 0))]
fn gen_regular(n: usize, k: usize, seed: u64) -> PyResult<Network> {
    generators::gen_regular(n, k, seed)
        .map(Network::from)
        .map_err(py_err)
}

#[pyfunction]
fn gen_greedy_worst_case(x: usize, d: usize) -> PyResult<Network> {
    generators::gen_greedy_worst_case(x, d)
        .map(Network::from)
        .map_err(py_err)
}

#[pyfunction]
fn construct_2robust(k: usize) -> PyResult<Network> {
    design::construct_2robust(k)
        .map(Network::from)
        .map_err(py_err)
}

/// Exhaustive design search; returns `(network, X)` with `X = MR(2)`.
#[pyfunction]
fn design_2robust(n: usize, k: usize) -> PyResult<(Network, usize)> {
    let r = design::design_2robust_ilp(n, k).map_err(py_err)?;
    Ok((r.network.into(), r.x))
}

/// Exact node expansion as `(numerator, denominator)`.
#[pyfunction]
fn node_expansion(net: &Network) -> PyResult<(u64, u64)> {
    let g = interdep::BipartiteGraph::from(&net.inner);
    let r = design::node_expansion(&g).map_err(py_err)?;
    Ok((*r.value.numer(), *r.value.denom()))
}

#[pymodule]
fn pyinterdep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Network>()?;
    m.add_function(wrap_pyfunction!(cascade, m)?)?;
    m.add_function(wrap_pyfunction!(mr, m)?)?;
    m.add_function(wrap_pyfunction!(mr_curve, m)?)?;
    m.add_function(wrap_pyfunction!(mrb, m)?)?;
    m.add_function(wrap_pyfunction!(greedy, m)?)?;
    m.add_function(wrap_pyfunction!(rounding, m)?)?;
    m.add_function(wrap_pyfunction!(sa1, m)?)?;
    m.add_function(wrap_pyfunction!(sa2, m)?)?;
    m.add_function(wrap_pyfunction!(gen_type1, m)?)?;
    m.add_function(wrap_pyfunction!(gen_type2, m)?)?;
    m.add_function(wrap_pyfunction!(gen_regular, m)?)?;
    m.add_function(wrap_pyfunction!(gen_greedy_worst_case, m)?)?;
    m.add_function(wrap_pyfunction!(construct_2robust, m)?)?;
    m.add_function(wrap_pyfunction!(design_2robust, m)?)?;
    m.add_function(wrap_pyfunction!(node_expansion, m)?)?;
    Ok(())
}
