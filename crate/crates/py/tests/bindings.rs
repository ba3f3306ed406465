use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn module_runs_inside_an_embedded_interpreter() {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(edgerees_py::edgerees_py)(py);
        let locals = PyDict::new(py);
        locals.set_item("er", module).unwrap();
        let code = c"
g = er.Graph.cycle(5)
r = er.regularity_normal(g)
assert (r['value'], r['q0']) == (3, 3)
v = er.ToricPresentation([[2, 0], [1, 1], [0, 2]])
assert v.divisor_complex([2, 2]) == [[0, 2], [1]]
assert v.betti_table(4)['totals'] == [1, 1]
rep = er.analyze(er.Graph.path(3))
assert rep['regularity']['status'] == 'exact'
try:
    er.Graph(2, [(1, 1)])
    raise AssertionError('loop accepted')
except er.EdgereesError as e:
    assert 'loop rejected' in str(e)
";
        py.run(code, None, Some(&locals)).unwrap();
    });
}
