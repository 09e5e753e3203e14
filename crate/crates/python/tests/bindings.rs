use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run_python(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(pyregsync::pyregsync)(py);
        let globals = PyDict::new(py);
        globals.set_item("rs", module).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn spec_and_spectrum() {
    run_python(
        c"
s = rs.GraphSpec('cycle', [4], 1)
assert s.node_count == 4
assert s.laplacian()[0] == [2.0, -1.0, 0.0, -1.0]
vals = s.sorted_spectrum()
assert all(abs(a - b) < 1e-12 for a, b in zip(vals, [0, 2, 2, 4]))
assert [i for i, _ in s.spectrum()] == [[0], [1], [2], [3]]
assert abs(s.eigenvalue([2]) - 4.0) < 1e-12
assert s.verify_closed_form() < 1e-9
",
    );
}

#[test]
fn sync_and_audit() {
    run_python(
        c"
rep = rs.GraphSpec('torus2d', [4, 4], 1).sync()
assert abs(rep.ratio_exact - 0.25) < 1e-12
assert rep.paper_case == 'torus-even'
rec = rs.GraphSpec('cycle', [12], 2).verify_theorems()
assert not rec['exact_match']
assert rec['claimed_argmax'] == [6] and rec['exact_argmax'] == [3]
assert rs.GraphSpec('torusm', [4, 5], 1).closed_form_ratio() is None
",
    );
}

#[test]
fn errors_map_to_python_exceptions() {
    run_python(
        c"
try:
    rs.GraphSpec('cycle', [4], 2)
    raise AssertionError('expected ValueError')
except ValueError as e:
    assert 'invalid overhead' in str(e)
try:
    rs.jacobi_eigenvalues([[1.0, 2.0], [0.0, 1.0]])
    raise AssertionError('expected ValueError')
except ValueError:
    pass
ev, sweeps, off = rs.jacobi_eigenvalues([[2.0, -1.0], [-1.0, 2.0]])
assert abs(ev[0] - 1) < 1e-12 and abs(ev[1] - 3) < 1e-12
out = rs.sweep('family = cycle\\ndims = 20\\naxis = overhead\\naxis_values = 1..3\\n')
assert out.splitlines()[0] == 'axis,N,connectivity,sync_ratio,ratio_paper,deviation,status'
assert len(out.splitlines()) == 4
",
    );
}
