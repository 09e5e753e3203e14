"""Smoke test for the pyregsync extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pyregsync-*.whl
"""

import math

import pyregsync as rs


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    # 1-nearest-neighbor cycle on 4 nodes: spectrum {0, 2, 2, 4}
    c4 = rs.GraphSpec("cycle", [4], 1)
    assert c4.laplacian()[0] == [2.0, -1.0, 0.0, -1.0]
    assert all(close(a, b) for a, b in zip(c4.sorted_spectrum(), [0, 2, 2, 4]))

    # closed form agrees with the dense oracle
    for spec in (rs.GraphSpec("cycle", [10], 2), rs.GraphSpec("torusm", [4, 4, 4], 1)):
        assert spec.verify_closed_form() < 1e-9, spec

    ev, _, _ = rs.jacobi_eigenvalues(rs.GraphSpec("torus2d", [3, 3], 1).laplacian())
    assert all(close(a, b) for a, b in zip(ev, [0, 3, 3, 3, 3, 6, 6, 6, 6]))

    rep = rs.GraphSpec("torus2d", [4, 4], 1).sync()
    assert close(rep.ratio_exact, 0.25) and close(rep.ratio_paper, 0.25)

    assert close(rs.dirichlet_sum(2, 2 * math.pi / 5), 0.0, 1e-12)
    assert close(rs.cycle_eigenvalue(5, 2, 1), 5.0, 1e-12)

    audit = rs.GraphSpec("cycle", [12], 2).verify_theorems()
    assert not audit["exact_match"] and audit["deviation"] > 0.01

    try:
        rs.GraphSpec("cycle", [4], 2)
    except ValueError:
        pass
    else:
        raise AssertionError("2r+1 > n must be rejected")

    csv = rs.sweep("family = cycle\ndims = 100\naxis = overhead\naxis_values = 1..10\n")
    rows = [line.split(",") for line in csv.splitlines()[1:]]
    conn = [float(r[2]) for r in rows]
    assert len(rows) == 10 and all(b > a for a, b in zip(conn, conn[1:]))

    print("pyregsync smoke test: ok")


if __name__ == "__main__":
    main()
