import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from inattentive_voters.errors import LPInfeasibleError
from inattentive_voters.simplex import (
    LPUnboundedError,
    enumerate_vertices,
    linprog_max,
    max_over_vertices,
)


def test_small_lp():
    # max x + 2y  s.t. x + y + s = 4, x + 3y + t = 6
    A = [[1, 1, 1, 0], [1, 3, 0, 1]]
    res = linprog_max([1, 2, 0, 0], A, [4, 6])
    assert res.objective == pytest.approx(5.0, abs=1e-12)
    assert res.x[:2] == pytest.approx([3.0, 1.0], abs=1e-12)
    assert res.duality_gap <= 1e-12
    assert res.dual_infeasibility <= 1e-12


def test_infeasible_and_unbounded():
    with pytest.raises(LPInfeasibleError):
        linprog_max([1, 1], [[1, 1]], [-1])
    with pytest.raises(LPUnboundedError):
        linprog_max([1, 0], [[1, -1]], [1])
    with pytest.raises(LPInfeasibleError):
        max_over_vertices([1, 1], [[1, 1]], [-1])


def test_redundant_rows_are_dropped():
    A = [[1, 1, 1], [2, 2, 2], [1, 0, 0]]
    res = linprog_max([0, 1, 2], A, [1, 2, 0.25])
    assert res.objective == pytest.approx(1.5, abs=1e-12)


def test_degenerate_vertex_does_not_cycle():
    # classic Beale example in equality form
    c = [0.75, -150, 0.02, -6, 0, 0, 0]
    A = [[0.25, -60, -0.04, 9, 1, 0, 0],
         [0.5, -90, -0.02, 3, 0, 1, 0],
         [0, 0, 1, 0, 0, 0, 1]]
    res = linprog_max(c, A, [0, 0, 1])
    assert res.objective == pytest.approx(0.05, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_random_lps_match_vertex_enumeration_and_scipy(seed):
    rng = np.random.default_rng(seed)
    m, n = 3, 7
    A = rng.uniform(0, 1, (m, n))
    x0 = rng.uniform(0, 1, n)
    b = A @ x0  # feasible by construction, bounded since A > 0
    c = rng.normal(size=n)
    res = linprog_max(c, A, b)
    best, _ = max_over_vertices(c, A, b)
    ref = linprog(-c, A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs")
    assert res.objective == pytest.approx(best, abs=1e-9)
    assert res.objective == pytest.approx(-ref.fun, abs=1e-8)
    assert np.allclose(A @ res.x, b, atol=1e-9)
    assert res.duality_gap <= 1e-9


def test_vertices_of_simplex():
    verts = enumerate_vertices([[1, 1, 1]], [1])
    assert sorted(tuple(v) for v in verts) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
