"""The compiled and pure-Python elimination kernels must agree bit for bit."""
from __future__ import annotations

import copy

import pytest
from hypothesis import given, strategies as st

from fincoh.linalg import BACKEND, IntMatrix, kernels
from fincoh.linalg.smith import smith_diagonal
from fincoh.linalg import _kernels_py as py

try:
    from fincoh.linalg import _kernels as cy
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

dense = st.integers(0, 7).flatmap(
    lambda m: st.integers(0, 7).flatmap(
        lambda n: st.tuples(st.just(m), st.just(n), st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))))


def test_backend_selection():
    assert BACKEND in ("cython", "python")
    assert kernels.smith_dense is (py.smith_dense if BACKEND == "python" else cy.smith_dense)


@needs_cython
@given(dense, st.booleans())
def test_smith_dense_equivalent(args, inverses):
    m, n, a = args
    assert cy.smith_dense(copy.deepcopy(a), m, n, inverses) == py.smith_dense(copy.deepcopy(a), m, n, inverses)


@needs_cython
@given(dense)
def test_row_hermite_equivalent(args):
    m, n, a = args
    if not a:
        return
    assert cy.row_hermite(a, n) == py.row_hermite(a, n)


@needs_cython
@given(st.data())
def test_reduce_chain_complex_equivalent(data):
    sizes = data.draw(st.lists(st.integers(1, 4), min_size=2, max_size=4))
    diffs = {}
    for k in range(1, len(sizes)):
        diffs[k] = {a: {b: v for b in range(sizes[k - 1])
                        if (v := data.draw(st.integers(-2, 2)))}
                    for a in range(sizes[k])}
    split = data.draw(st.sampled_from([None, 1]))
    steps_cy = cy.reduce_chain_complex(copy.deepcopy(diffs), split)
    steps_py = py.reduce_chain_complex(copy.deepcopy(diffs), split)
    assert steps_cy == steps_py
    # project from degree 1 through the pivots of degree 2 and the column operations of degree 1
    vec = {i: 1 for i in range(sizes[1])}
    ups = [s for s in steps_py if s[0] == 2]
    ops = [s for s in steps_py if s[0] == 1 and len(s) == 4]
    drop = {s[1] for s in steps_py if s[0] == 1 and len(s) == 6}
    assert cy.project_vector(vec, ups, drop, ops) == py.project_vector(vec, ups, drop, ops)
    here = [s for s in steps_py if s[0] == 1]
    assert cy.include_vector(vec, here) == py.include_vector(vec, here)


def test_split_degree_reduces_rows_to_gcd():
    # Z --2--> Z: no unit, but the split degree eliminates the 2
    diffs = {1: {0: {0: 2}}}
    assert py.reduce_chain_complex(copy.deepcopy(diffs)) == []
    steps = py.reduce_chain_complex(copy.deepcopy(diffs), split_degree=1)
    assert [s[:4] for s in steps] == [(1, 0, 0, 2)]
    # [2 4] has kernel (-2, 1)
    diffs = {1: {0: {0: 2}, 1: {0: 4}}}
    steps = py.reduce_chain_complex(diffs, split_degree=1)
    assert diffs[1] == {1: {}}
    assert py.include_vector({1: 1}, steps) == {1: 1, 0: -2}
    # [2 3]: Euclid column operations first, kernel (3, -2)
    diffs = {1: {0: {0: 2}, 1: {0: 3}}}
    steps = py.reduce_chain_complex(diffs, split_degree=1)
    (free,) = [a for a, col in diffs[1].items()]
    assert py.include_vector({free: 1}, steps) in ({0: 3, 1: -2}, {0: -3, 1: 2})


@given(st.data())
def test_split_degree_keeps_the_kernel(data):
    m = data.draw(st.integers(1, 4))
    n = data.draw(st.integers(1, 5))
    A = [[data.draw(st.integers(-6, 6)) for _ in range(n)] for _ in range(m)]
    diffs = {1: {a: {b: A[b][a] for b in range(m) if A[b][a]} for a in range(n)}}
    steps = py.reduce_chain_complex(diffs, split_degree=1)
    left = [a for a in diffs[1]]
    assert all(not diffs[1][a] for a in left)   # every row got eliminated
    for a in left:
        w = py.include_vector({a: 1}, steps)
        assert all(sum(A[b][j] * w.get(j, 0) for j in range(n)) == 0 for b in range(m))
    # the lifted vectors span a saturated lattice
    vecs = [[py.include_vector({a: 1}, steps).get(j, 0) for j in range(n)] for a in left]
    if vecs:
        assert all(abs(d) == 1 for d in smith_diagonal(IntMatrix.from_rows(vecs)))
