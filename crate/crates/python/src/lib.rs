//! Python bindings: a thin, 0-based mirror of the solver API. Results come
//! back as plain dicts shaped like the CLI's JSON documents.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kitree::certificates::SolveResult;
use kitree::graph;
use kitree::oracle::{self, InstanceSpec};
use kitree::solver;

/// Immutable simple undirected graph with dense 0-based vertex ids.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        let inner = graph::Graph::new(n, &edges)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGraph { inner })
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn m(&self) -> usize {
        self.inner.m()
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        if v as usize >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges()
    }

    /// Length of a shortest cycle, or None for a forest.
    fn girth(&self) -> Option<usize> {
        graph::girth(&self.inner).finite()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn result_to_dict<'py>(py: Python<'py>, result: &SolveResult) -> PyResult<Bound<'py, PyDict>> {
    let doc = PyDict::new(py);
    match result {
        SolveResult::Tree(t) => {
            doc.set_item("status", "tree")?;
            doc.set_item("vertices", t.vertices.iter().collect::<Vec<u32>>())?;
        }
        SolveResult::NoTreeK(s) => {
            doc.set_item("status", "no_tree")?;
            let cert = PyDict::new(py);
            cert.set_item("type", "k_structure")?;
            cert.set_item("paths", s.paths().to_vec())?;
            doc.set_item("certificate", cert)?;
        }
        SolveResult::NoTreeK4(s) => {
            doc.set_item("status", "no_tree")?;
            let cert = PyDict::new(py);
            cert.set_item("type", "k4_structure")?;
            cert.set_item("branch", s.branch.to_vec())?;
            cert.set_item("paths", s.paths.to_vec())?;
            doc.set_item("certificate", cert)?;
        }
        SolveResult::Disconnected(groups) => {
            doc.set_item("status", "disconnected")?;
            doc.set_item("components", groups.clone())?;
        }
    }
    Ok(doc)
}

/// Solve k-in-a-tree (k = len(terminals) >= 5, girth >= k); returns a dict
/// with a verified certificate.
#[pyfunction]
fn solve<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    terminals: Vec<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let result = solver::k_in_a_tree(&graph.inner, &terminals)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    result_to_dict(py, &result)
}

/// Brute-force decision on small graphs; independent of the solver.
#[pyfunction]
#[pyo3(signature = (graph, terminals, max_n = 20))]
fn oracle_decides(graph: &PyGraph, terminals: Vec<u32>, max_n: usize) -> PyResult<bool> {
    oracle::brute_force_k_in_a_tree(&graph.inner, &terminals, max_n)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Generate a named test instance; returns (graph, terminals).
#[pyfunction]
#[pyo3(signature = (kind, k = 5, n = 12, seed = 0, path_len = 1, leg_len = 2))]
fn generate(
    kind: &str,
    k: usize,
    n: usize,
    seed: u64,
    path_len: usize,
    leg_len: usize,
) -> PyResult<(PyGraph, Vec<u32>)> {
    let spec = match kind {
        "minimal-k-structure" => InstanceSpec::MinimalKStructure { k, path_len },
        "subdivided-k4" => InstanceSpec::SubdividedK4 { path_len },
        "spider" => InstanceSpec::Spider { k, leg_len },
        "random-girth" => InstanceSpec::RandomGirth { k, n, seed },
        other => {
            return Err(PyValueError::new_err(format!("unknown kind `{other}`")));
        }
    };
    let inst = oracle::generate(&spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((PyGraph { inner: inst.graph }, inst.terminals))
}

/// True when `vertices` induces a tree of `graph` containing all terminals.
#[pyfunction]
fn verify_tree(graph: &PyGraph, vertices: Vec<u32>, terminals: Vec<u32>) -> bool {
    let tree = kitree::certificates::InducedTree::new(
        vertices.into_iter().collect(),
        terminals,
    );
    kitree::certificates::verify_induced_tree(&graph.inner, &tree)
}

#[pymodule]
fn kitree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_decides, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tree, m)?)?;
    Ok(())
}
