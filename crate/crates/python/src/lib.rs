use acquaintance::ac_one::{deterministic_strategy, randomized_strategy, structure_audit, AcOneError};
use acquaintance::bounds::{full_report, report_with_separator};
use acquaintance::dynamics::{parse_strategy, simulate, verify_acquaintance, write_strategy, Matching};
use acquaintance::exact::{exact_ac_with_cap, ExactOutcome, DEFAULT_VERTEX_CAP};
use acquaintance::graph::{self as core_graph, generate, FamilySpec};
use acquaintance::hardness::{plant_equicolorable, ramsey_double, reduce, ColoredGraph, DoubleRule};
use acquaintance::strategies::{self as strat, OctopusMode};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(module = "acquaintance_py", frozen)]
struct Graph {
    inner: core_graph::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph {
            inner: core_graph::Graph::new(n, edges).map_err(value_err)?,
        })
    }

    /// `family` is one of path, cycle, complete, complete_bipartite,
    /// hypercube, binary_tree, barbell, clique_ring, octopus, gnp.
    #[staticmethod]
    #[pyo3(signature = (family, *params, p = 0.5, seed = 0))]
    fn family(family: &str, params: Vec<usize>, p: f64, seed: u64) -> PyResult<Self> {
        let arg = |i: usize| {
            params
                .get(i)
                .copied()
                .ok_or_else(|| value_err(format!("{family} needs {} parameter(s)", i + 1)))
        };
        let spec = match family {
            "path" => FamilySpec::Path(arg(0)?),
            "cycle" => FamilySpec::Cycle(arg(0)?),
            "complete" => FamilySpec::Complete(arg(0)?),
            "complete_bipartite" => FamilySpec::CompleteBipartite(arg(0)?, arg(1)?),
            "hypercube" => FamilySpec::Hypercube(arg(0)?),
            "binary_tree" => FamilySpec::BinaryTree(arg(0)?),
            "barbell" => FamilySpec::Barbell(arg(0)?),
            "clique_ring" => FamilySpec::CliqueRing(arg(0)?, arg(1)?),
            "octopus" => FamilySpec::Octopus(arg(0)?, arg(1)?),
            "gnp" => FamilySpec::Gnp(arg(0)?, p, seed),
            other => return Err(value_err(format!("unknown family `{other}`"))),
        };
        Ok(Graph {
            inner: generate(&spec).map_err(value_err)?,
        })
    }

    /// Parses the `n m` edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: core_graph::parse_graph(text).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        core_graph::write_graph(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn diameter(&self) -> PyResult<usize> {
        core_graph::diameter(&self.inner).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyclass(module = "acquaintance_py", frozen)]
struct Strategy {
    inner: acquaintance::dynamics::Strategy,
}

#[pymethods]
impl Strategy {
    #[new]
    fn new(n: usize, rounds: Vec<Vec<(usize, usize)>>) -> Self {
        Strategy {
            inner: acquaintance::dynamics::Strategy::new(n, rounds.into_iter().map(Matching::new).collect()),
        }
    }

    /// Reads the JSON strategy format, checking every round against `graph`.
    #[staticmethod]
    fn from_json(text: &str, graph: &Graph) -> PyResult<Self> {
        let (inner, _) = parse_strategy(text, &graph.inner).map_err(value_err)?;
        Ok(Strategy { inner })
    }

    fn to_json(&self) -> String {
        write_strategy(&self.inner, None)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rounds(&self) -> Vec<Vec<(usize, usize)>> {
        self.inner.rounds().iter().map(|m| m.pairs().to_vec()).collect()
    }

    fn reverse(&self) -> Strategy {
        Strategy {
            inner: self.inner.reverse(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Strategy(n={}, rounds={})", self.inner.n(), self.inner.len())
    }
}

fn wrap(inner: acquaintance::dynamics::Strategy) -> Strategy {
    Strategy { inner }
}

/// `(ok, missing_pairs)`.
#[pyfunction]
fn verify(graph: &Graph, strategy: &Strategy) -> PyResult<(bool, Vec<(usize, usize)>)> {
    let v = verify_acquaintance(&graph.inner, &strategy.inner).map_err(value_err)?;
    Ok((v.ok, v.missing))
}

/// Acquainted pairs after each round.
#[pyfunction]
fn met_counts(graph: &Graph, strategy: &Strategy) -> PyResult<Vec<usize>> {
    let r = simulate(&graph.inner, &strategy.inner).map_err(value_err)?;
    Ok(std::iter::once(r.initial_met).chain(r.met_after).collect())
}

/// `(value, witness)`, or `None` when more than `max_rounds` are needed.
#[pyfunction]
#[pyo3(signature = (graph, max_rounds = 8, cap = DEFAULT_VERTEX_CAP))]
fn exact(py: Python<'_>, graph: &Graph, max_rounds: usize, cap: usize) -> PyResult<Option<(usize, Strategy)>> {
    let g = graph.inner.clone();
    let out = py
        .detach(move || exact_ac_with_cap(&g, max_rounds, cap))
        .map_err(value_err)?;
    Ok(match out {
        ExactOutcome::Solved { value, witness } => Some((value, wrap(witness))),
        ExactOutcome::Exceeded { .. } => None,
    })
}

#[pyfunction]
#[pyo3(signature = (graph, separator = None))]
fn lower_bounds<'py>(py: Python<'py>, graph: &Graph, separator: Option<Vec<usize>>) -> PyResult<Bound<'py, PyDict>> {
    let r = match separator {
        Some(sep) => report_with_separator(&graph.inner, &sep),
        None => full_report(&graph.inner),
    }
    .map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("diameter_bound", r.diameter_bound)?;
    d.set_item("edge_bound", r.edge_bound)?;
    d.set_item("bottleneck", r.bottleneck.as_ref().map(|b| b.bound))?;
    d.set_item("separator", r.bottleneck.map(|b| b.separator))?;
    d.set_item("best_lower", r.best_lower)?;
    Ok(d)
}

/// `(strategy, generator_name)` for the shortest verified construction.
#[pyfunction]
fn best_strategy(graph: &Graph) -> PyResult<(Strategy, String)> {
    let b = strat::best_strategy(&graph.inner).map_err(value_err)?;
    Ok((wrap(b.strategy), b.generator))
}

#[pyfunction]
fn general_strategy(graph: &Graph) -> PyResult<Strategy> {
    Ok(wrap(strat::ac_upper_general(&graph.inner).map_err(value_err)?.strategy))
}

#[pyfunction]
fn baseline_strategy(graph: &Graph) -> PyResult<Strategy> {
    Ok(wrap(strat::dfs_baseline(&graph.inner).map_err(value_err)?))
}

#[pyfunction]
fn path_strategy(n: usize) -> Strategy {
    wrap(strat::path_strategy(n))
}

#[pyfunction]
fn complete_bipartite_strategy(r: usize) -> PyResult<Strategy> {
    Ok(wrap(strat::complete_bipartite_strategy(r).map_err(value_err)?))
}

#[pyfunction]
fn binary_tree_strategy(depth: usize) -> PyResult<Strategy> {
    Ok(wrap(strat::binary_tree_strategy(depth).map_err(value_err)?))
}

#[pyfunction]
fn clique_ring_strategy(r: usize, l: usize) -> PyResult<Strategy> {
    Ok(wrap(strat::clique_ring_strategy(r, l).map_err(value_err)?))
}

/// `mode` is "pairs" or "center".
#[pyfunction]
#[pyo3(signature = (r, l, mode = "pairs"))]
fn octopus_strategy(r: usize, l: usize, mode: &str) -> PyResult<Strategy> {
    let mode = match mode {
        "pairs" => OctopusMode::Pairs,
        "center" => OctopusMode::Center,
        other => return Err(value_err(format!("unknown octopus mode `{other}`"))),
    };
    Ok(wrap(strat::octopus_strategy(r, l, mode).map_err(value_err)?))
}

#[pyfunction]
fn audit<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyDict>> {
    let a = structure_audit(&graph.inner, None).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", a.passed())?;
    d.set_item("failed", a.failed_checks())?;
    d.set_item("edge_count_ok", a.edge_count_ok)?;
    d.set_item("high_degree_count", a.high_degree_count)?;
    d.set_item("high_degree_ok", a.high_degree_ok)?;
    d.set_item("max_matching", a.max_matching)?;
    d.set_item("perfect_matching_ok", a.perfect_matching_ok)?;
    d.set_item("neighbourhood_ok", a.neighbourhood_ok)?;
    Ok(d)
}

fn ac_one_err(e: AcOneError) -> PyErr {
    match e {
        AcOneError::RestartsExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

/// Deterministic algorithm for acquaintance time one; `ValueError` carries
/// the certificate when the graph needs at least two rounds.
#[pyfunction]
#[pyo3(signature = (graph, c = 1))]
fn ac1_deterministic(py: Python<'_>, graph: &Graph, c: usize) -> PyResult<Strategy> {
    let g = graph.inner.clone();
    Ok(wrap(
        py.detach(move || deterministic_strategy(&g, c)).map_err(ac_one_err)?,
    ))
}

#[pyfunction]
#[pyo3(signature = (graph, seed = 0, round_cap = None))]
fn ac1_randomized(py: Python<'_>, graph: &Graph, seed: u64, round_cap: Option<usize>) -> PyResult<Strategy> {
    let g = graph.inner.clone();
    let run = py
        .detach(move || randomized_strategy(&g, seed, round_cap))
        .map_err(ac_one_err)?;
    Ok(wrap(run.strategy))
}

/// `(graph, coloring)` with a planted equitable `k`-coloring.
#[pyfunction]
fn plant(n: usize, k: usize, p: f64, seed: u64) -> PyResult<(Graph, Vec<usize>)> {
    let cg = plant_equicolorable(n, k, p, seed).map_err(|e| value_err(format!("{e:?}")))?;
    Ok((
        Graph {
            inner: cg.graph().clone(),
        },
        cg.coloring().to_vec(),
    ))
}

/// `(H, witness)` for an equitable `k`-coloring of `graph`.
#[pyfunction]
#[pyo3(name = "reduce")]
fn reduce_py(graph: &Graph, k: usize, coloring: Vec<usize>, t: usize) -> PyResult<(Graph, Strategy)> {
    let cg = ColoredGraph::new(graph.inner.clone(), k, coloring).map_err(|e| value_err(format!("{e:?}")))?;
    let (h, w) = reduce(&cg, t).map_err(|e| value_err(format!("{e:?}")))?;
    Ok((Graph { inner: h }, wrap(w)))
}

/// Doubled graph and its one-round witness; cross edges follow `seed`, or
/// the fixed rule when `seed` is `None`.
#[pyfunction]
#[pyo3(signature = (graph, seed = None))]
fn double(graph: &Graph, seed: Option<u64>) -> (Graph, Strategy) {
    let rule = seed.map_or(DoubleRule::Deterministic, DoubleRule::Seeded);
    let (g, m) = ramsey_double(&graph.inner, rule);
    let n = g.n();
    (
        Graph { inner: g },
        wrap(acquaintance::dynamics::Strategy::new(n, vec![m])),
    )
}

#[pymodule]
fn acquaintance_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Strategy>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(met_counts, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(best_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(general_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(path_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(complete_bipartite_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(binary_tree_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(clique_ring_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(octopus_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(ac1_deterministic, m)?)?;
    m.add_function(wrap_pyfunction!(ac1_randomized, m)?)?;
    m.add_function(wrap_pyfunction!(plant, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_py, m)?)?;
    m.add_function(wrap_pyfunction!(double, m)?)?;
    Ok(())
}
