//! Python bindings.

use std::collections::BTreeMap;

use edgerees::polytope::{facet_system, q_zero as core_q_zero, PointQuery};
use edgerees::regularity::{self, AnalyzeOptions, BettiOptions, RegStatus};
use edgerees::{ExponentVector, FieldChoice, SimplicialComplex};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(edgerees_py, EdgereesError, PyValueError);

fn err(e: edgerees::Error) -> PyErr {
    EdgereesError::new_err(e.to_string())
}

fn field(name: &str) -> PyResult<FieldChoice> {
    name.parse::<FieldChoice>().map_err(err)
}

fn status(s: RegStatus) -> &'static str {
    match s {
        RegStatus::Exact => "exact",
        RegStatus::LowerBound => "lower_bound",
    }
}

/// A finite simple graph on vertices `1..=n`.
#[pyclass(name = "Graph", module = "edgerees_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: edgerees::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self { inner: edgerees::Graph::new(n, edges).map_err(err)? })
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        Ok(Self { inner: edgerees::Graph::path(n).map_err(err)? })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(Self { inner: edgerees::Graph::cycle(n).map_err(err)? })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Ok(Self { inner: edgerees::Graph::complete(n).map_err(err)? })
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> PyResult<Self> {
        Ok(Self { inner: edgerees::Graph::complete_bipartite(a, b).map_err(err)? })
    }

    #[staticmethod]
    fn disjoint_edges(m: usize) -> PyResult<Self> {
        Ok(Self { inner: edgerees::Graph::disjoint_edges(m).map_err(err)? })
    }

    fn disjoint_union(&self, other: &PyGraph) -> PyResult<Self> {
        Ok(Self { inner: self.inner.disjoint_union(&other.inner).map_err(err)? })
    }

    fn cone_graph(&self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.cone_graph().map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        self.inner.connected_components()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite_graph()
    }

    fn matching_number(&self) -> usize {
        self.inner.matching_number()
    }

    fn maximum_matching(&self) -> Vec<(usize, usize)> {
        self.inner.maximum_matching()
    }

    fn induced_matching_number(&self) -> usize {
        self.inner.induced_matching_number()
    }

    fn edge_cover_number(&self) -> PyResult<usize> {
        self.inner.edge_cover_number().map_err(err)
    }

    fn has_perfect_matching(&self) -> bool {
        self.inner.has_perfect_matching()
    }

    fn edge_ring_is_normal(&self) -> bool {
        self.inner.edge_ring_is_normal()
    }

    fn rees_is_normal(&self) -> bool {
        self.inner.rees_is_normal().normal
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.inner.n(), self.inner.edges())
    }
}

/// Monomial generators of equal degree in a common ambient dimension.
#[pyclass(name = "ToricPresentation", module = "edgerees_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPresentation {
    inner: edgerees::ToricPresentation,
}

fn vector(v: Vec<u32>) -> ExponentVector {
    ExponentVector::new(v)
}

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(generators: Vec<Vec<u32>>) -> PyResult<Self> {
        let dim = generators.first().map_or(0, |g| g.len());
        let gens = generators.into_iter().map(vector).collect();
        Ok(Self { inner: edgerees::ToricPresentation::new(dim, gens).map_err(err)? })
    }

    #[staticmethod]
    fn edge_ring(g: &PyGraph) -> PyResult<Self> {
        Ok(Self { inner: edgerees::ToricPresentation::edge_ring(&g.inner).map_err(err)? })
    }

    #[staticmethod]
    fn rees_algebra(g: &PyGraph) -> PyResult<Self> {
        Ok(Self { inner: edgerees::ToricPresentation::rees_algebra(&g.inner).map_err(err)? })
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<u32>> {
        self.inner.generators().iter().map(|g| g.coords().to_vec()).collect()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn contains(&self, b: Vec<u32>) -> PyResult<bool> {
        self.inner.contains(&vector(b)).map_err(err)
    }

    /// Generator indices (0-based) summing to `b`, or `None`.
    fn membership(&self, b: Vec<u32>) -> PyResult<Option<Vec<usize>>> {
        self.inner.membership(&vector(b)).map_err(err)
    }

    fn enumerate_degree(&self, q: usize) -> Vec<Vec<u32>> {
        self.inner.enumerate_degree(q).into_iter().map(|v| v.coords().to_vec()).collect()
    }

    /// Facets of the squarefree divisor complex of `a`, as 0-based
    /// generator indices.
    fn divisor_complex(&self, a: Vec<u32>) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.inner.divisor_complex(&vector(a)).map_err(err)?.facets().to_vec())
    }

    #[pyo3(signature = (a, i, field = "rational"))]
    fn multigraded_betti(&self, a: Vec<u32>, i: usize, field: &str) -> PyResult<usize> {
        edgerees::homology::multigraded_betti(&self.inner, &vector(a), i, self::field(field)?).map_err(err)
    }

    /// Betti table up to internal degree `j_max`.
    #[pyo3(signature = (j_max, field = "rational"))]
    fn betti_table<'py>(&self, py: Python<'py>, j_max: usize, field: &str) -> PyResult<Bound<'py, PyDict>> {
        let opts = BettiOptions { field: self::field(field)?, ..Default::default() };
        let t = regularity::betti_table(&self.inner, j_max, opts).map_err(err)?;
        let reg = regularity::regularity_from_table(&t).map_err(err)?;
        let d = PyDict::new(py);
        let entries: Vec<(usize, usize, usize)> = t.entries.iter().map(|e| (e.i, e.j, e.count)).collect();
        d.set_item("entries", entries)?;
        d.set_item("totals", t.totals())?;
        d.set_item("diagram", t.render())?;
        d.set_item("regularity", reg.value)?;
        d.set_item("status", status(reg.status))?;
        d.set_item("j_max", j_max)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let gens: Vec<String> = self.inner.generators().iter().map(|g| g.to_string()).collect();
        format!("ToricPresentation([{}])", gens.join(", "))
    }
}

/// Reduced homology dimensions of the complex with the given facets on
/// vertices `0..n`.
#[pyfunction]
#[pyo3(signature = (n, facets, field = "rational"))]
fn reduced_homology(n: usize, facets: Vec<Vec<usize>>, field: &str) -> PyResult<BTreeMap<isize, usize>> {
    let c = SimplicialComplex::from_facets(n, facets).map_err(err)?;
    Ok(c.reduced_homology_dims(self::field(field)?))
}

/// `reg R(I(G))` from the interior threshold of the cone polytope.
#[pyfunction]
fn regularity_normal<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let r = regularity::regularity_normal(&g.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("q0", r.q0)?;
    d.set_item("polytope_dim", r.polytope_dim)?;
    Ok(d)
}

/// Least dilation of the edge polytope with an interior lattice point.
#[pyfunction]
fn q_zero(g: &PyGraph) -> PyResult<u32> {
    core_q_zero(&g.inner).map_err(err)
}

/// Lattice points of `q` times the edge polytope of `g`.
#[pyfunction]
#[pyo3(signature = (g, q, interior = false, positive_only = false, limit = None))]
fn lattice_points(
    g: &PyGraph,
    q: u32,
    interior: bool,
    positive_only: bool,
    limit: Option<usize>,
) -> PyResult<Vec<Vec<u32>>> {
    let fs = facet_system(&g.inner).map_err(err)?;
    let pts = fs.dilation_points(q, PointQuery { strict: interior, positive_only, limit }).map_err(err)?;
    Ok(pts.into_iter().map(|z| z.coords().to_vec()).collect())
}

/// Full regularity report as a dictionary.
#[pyfunction]
#[pyo3(signature = (g, j_max = None, field = "rational", cross_check = false, max_degrees = None))]
fn analyze<'py>(
    py: Python<'py>,
    g: &PyGraph,
    j_max: Option<usize>,
    field: &str,
    cross_check: bool,
    max_degrees: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = AnalyzeOptions { j_max, field: self::field(field)?, cross_check, max_degrees };
    let report = py.detach(|| regularity::analyze(&g.inner, opts)).map_err(err)?;
    let text = serde_json::to_string(&report).map_err(|e| EdgereesError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pymodule]
pub fn edgerees_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EdgereesError", m.py().get_type::<EdgereesError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(reduced_homology, m)?)?;
    m.add_function(wrap_pyfunction!(regularity_normal, m)?)?;
    m.add_function(wrap_pyfunction!(q_zero, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_points, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    Ok(())
}
