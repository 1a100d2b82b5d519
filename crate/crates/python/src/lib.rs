//! Python bindings. Vertex and element ids are 0-based positions, as in the
//! Rust API; labels are available separately.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use presslab::autonomy;
use presslab::recognize as rec;
use presslab::{BuildTree, PressingSequence, PseudoGraph};

fn value_error(e: presslab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &presslab::Gf2Matrix) -> Vec<Vec<u8>> {
    m.to_rows()
}

#[pyclass(name = "Graph", module = "presslab_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Graph(PseudoGraph);

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new(), loops = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>, loops: Vec<usize>) -> PyResult<Self> {
        PseudoGraph::from_edges(n, &edges, &loops)
            .map(Graph)
            .map_err(value_error)
    }

    /// Parses `.osp` text.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        text.parse().map(Graph).map_err(value_error)
    }

    #[staticmethod]
    fn from_adjacency(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let a = presslab::Gf2Matrix::from_rows(&rows).map_err(value_error)?;
        PseudoGraph::from_adjacency(&a).map(Graph).map_err(value_error)
    }

    fn to_text(&self) -> String {
        self.0.to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn labels(&self) -> Vec<usize> {
        self.0.labels().to_vec()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn loops(&self) -> Vec<usize> {
        self.0.loops().ones().collect()
    }

    fn adjacency(&self) -> Vec<Vec<u8>> {
        rows(&self.0.adjacency_matrix())
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn press(&self, v: usize) -> PyResult<Self> {
        self.0.press(v).map(Graph).map_err(value_error)
    }

    fn is_successful(&self, sequence: Vec<usize>) -> bool {
        self.0.is_successful(&PressingSequence::new(sequence))
    }

    fn sequences(&self) -> Vec<Vec<usize>> {
        self.0.sequences().into_iter().map(PressingSequence::into_vec).collect()
    }

    fn count_sequences(&self) -> u64 {
        self.0.count_sequences()
    }

    fn instructional_root(&self, sequence: Vec<usize>) -> PyResult<Vec<Vec<u8>>> {
        self.0
            .instructional_root(&PressingSequence::new(sequence))
            .map(|u| rows(&u))
            .map_err(value_error)
    }

    fn instructional_poset(&self, sequence: Vec<usize>) -> PyResult<Poset> {
        autonomy::instructional_poset(&self.0, &PressingSequence::new(sequence))
            .map(Poset)
            .map_err(value_error)
    }

    /// The instructional posets, each with its class of sequences.
    fn instructional_family(&self) -> PyResult<Vec<(Poset, Vec<Vec<usize>>)>> {
        let family = autonomy::instructional_family(&self.0).map_err(value_error)?;
        Ok(family
            .posets
            .into_iter()
            .zip(family.classes)
            .map(|(p, class)| (Poset(p), class.into_iter().map(PressingSequence::into_vec).collect()))
            .collect())
    }

    fn is_autonomous(&self) -> PyResult<bool> {
        autonomy::is_autonomous_graph(&self.0).map_err(value_error)
    }

    fn is_uniquely_pressable(&self) -> PyResult<bool> {
        autonomy::is_uniquely_pressable(&self.0).map_err(value_error)
    }

    fn left_append(&self, label: usize) -> PyResult<Self> {
        self.0.left_append(label).map(Graph).map_err(value_error)
    }

    fn right_append(&self, label: usize) -> PyResult<Self> {
        self.0.right_append(label).map(Graph).map_err(value_error)
    }

    fn is_isomorphic(&self, other: &Graph) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?}, loops={:?})", self.0.n(), self.edges(), self.loops())
    }
}

#[pyclass(name = "Poset", module = "presslab_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Poset(presslab::Poset);

#[pymethods]
impl Poset {
    /// Closure of the DAG with arcs `(a, b)` meaning `a > b`.
    #[new]
    #[pyo3(signature = (n, arcs = Vec::new()))]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        presslab::Poset::from_dag(n, &arcs).map(Poset).map_err(value_error)
    }

    /// Parses `.dag` text.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        text.parse().map(Poset).map_err(value_error)
    }

    #[staticmethod]
    fn lambda_family(n: usize) -> PyResult<Self> {
        presslab::Poset::lambda(n).map(Poset).map_err(value_error)
    }

    #[staticmethod]
    fn x_family(n: usize) -> PyResult<Self> {
        presslab::Poset::x_family(n).map(Poset).map_err(value_error)
    }

    fn to_text(&self) -> String {
        self.0.to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn labels(&self) -> Vec<usize> {
        self.0.labels().to_vec()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.0.covers().to_vec()
    }

    fn relations(&self) -> Vec<(usize, usize)> {
        self.0.relations()
    }

    fn greater(&self, a: usize, b: usize) -> bool {
        self.0.greater(a, b)
    }

    fn linear_extensions(&self) -> Vec<Vec<usize>> {
        self.0.linear_extensions()
    }

    fn count_linear_extensions(&self) -> u64 {
        self.0.count_linear_extensions()
    }

    fn is_vposet(&self) -> bool {
        rec::recognize_poset(&self.0)
    }

    #[pyo3(signature = (oracle = false))]
    fn is_autonomous(&self, oracle: bool) -> bool {
        if oracle {
            autonomy::is_autonomous_poset_oracle(&self.0)
        } else {
            autonomy::is_autonomous_poset(&self.0)
        }
    }

    /// A construction tree in s-expression form, or `None`.
    fn decompose(&self) -> Option<String> {
        rec::decompose(&self.0).map(|t| t.to_string())
    }

    fn generators(&self) -> Vec<Graph> {
        autonomy::enumerate_generators(&self.0).into_iter().map(Graph).collect()
    }

    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = self.0.stats();
        let d = PyDict::new(py);
        d.set_item("n", s.n)?;
        d.set_item("edges", s.edges)?;
        d.set_item("height_sum", s.height_sum)?;
        d.set_item("components", s.components)?;
        d.set_item("maximal", s.maximal)?;
        d.set_item("minimal", s.minimal)?;
        d.set_item("width", s.width)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Poset(n={}, covers={:?})", self.0.n(), self.0.covers())
    }
}

/// True iff the closure of the DAG is a V-poset.
#[pyfunction]
fn recognize(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<bool> {
    rec::recognize(n, &arcs).map_err(value_error)
}

/// Builds an autonomous generator from an s-expression tree.
#[pyfunction]
fn synthesize(tree: &str) -> PyResult<Graph> {
    let tree: BuildTree = tree.parse().map_err(value_error)?;
    autonomy::synthesize_generator(&tree).map(Graph).map_err(value_error)
}

#[pyfunction]
fn lambda_generator(n: usize) -> PyResult<Graph> {
    presslab::pressing::lambda_generator(n).map(Graph).map_err(value_error)
}

#[pymodule]
fn presslab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Poset>()?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_generator, m)?)?;
    Ok(())
}
