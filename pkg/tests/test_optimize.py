"""Checks for the grid + Nelder-Mead maximizer, line searches, and the LP."""

import itertools
import math

import numpy as np
import pytest

from relaybound import (
    Box,
    BoxDim,
    InfeasibleError,
    UnboundedError,
    bisect_feasible,
    golden_max,
    grid_then_refine,
    simplex_lp_max,
)


def lp_vertex_oracle(c, constraints):
    """Brute-force LP max by enumerating candidate basic feasible points.

    Intersects every n-subset of hyperplanes drawn from the constraint rows
    and the x_i = 0 planes, keeps the feasible ones, and returns the best
    objective value.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    planes = [(np.asarray(a, dtype=float), float(b)) for a, b in constraints]
    planes += [(np.eye(n)[i], 0.0) for i in range(n)]
    best = None
    for subset in itertools.combinations(planes, n):
        a = np.array([p[0] for p in subset])
        b = np.array([p[1] for p in subset])
        try:
            x = np.linalg.solve(a, b)
        except np.linalg.LinAlgError:
            continue
        if np.any(x < -1e-9):
            continue
        if any(np.dot(row, x) > bound + 1e-9 for row, bound in planes[: len(constraints)]):
            continue
        val = float(np.dot(c, x))
        if best is None or val > best:
            best = val
    return best


def test_box_dim_validation():
    with pytest.raises(ValueError, match="lo < hi"):
        BoxDim(1.0, 1.0)
    with pytest.raises(ValueError, match="unknown transform"):
        BoxDim(0.0, 1.0, "cubic")
    with pytest.raises(ValueError, match="lo > 0"):
        BoxDim(0.0, 1.0, "log")
    d = BoxDim(math.exp(-2), math.exp(2), "log")
    assert abs(d.to_internal(1.0)) < 1e-15
    assert abs(d.to_external(0.0) - 1.0) < 1e-15


def test_grid_then_refine_quadratic():
    box = Box([(-4.0, 4.0), (-4.0, 4.0)])

    def f(x, y):
        return -((x - 1.3) ** 2) - 2.0 * (y + 0.7) ** 2

    arg, val = grid_then_refine(f, box, grid_per_dim=9, refine_budget=600)
    assert abs(arg[0] - 1.3) < 1e-3
    assert abs(arg[1] + 0.7) < 1e-3
    assert val <= 0.0
    assert val > -1e-6


def test_grid_then_refine_log_dimension():
    box = Box([BoxDim(1e-3, 1e3, "log")])
    arg, val = grid_then_refine(lambda s: -(math.log(s) - math.log(7.0)) ** 2, box)
    assert abs(arg[0] - 7.0) / 7.0 < 1e-3
    assert val > -1e-6


def test_grid_then_refine_deterministic_and_tie_breaking():
    box = Box([(0.0, 1.0), (0.0, 1.0)])
    runs = [grid_then_refine(lambda x, y: 5.0, box) for _ in range(2)]
    assert runs[0] == runs[1]
    # constant objective: lexicographically smallest probe wins
    assert runs[0][0] == (0.0, 0.0)
    assert runs[0][1] == 5.0


def test_grid_then_refine_handles_non_finite():
    box = Box([(0.0, 2.0)])

    def f(x):
        if x < 0.5:
            return math.nan
        if x < 1.0:
            return -math.inf
        return -((x - 1.5) ** 2)

    arg, val = grid_then_refine(f, box, grid_per_dim=17, refine_budget=200)
    assert abs(arg[0] - 1.5) < 1e-3
    assert val > -1e-6


def test_grid_then_refine_never_below_grid():
    # a spiky objective the refinement step can easily wander away from
    box = Box([(0.0, 1.0)])

    def f(x):
        return 1.0 if abs(x - 2.0 / 7.0) < 1e-3 else math.sin(40.0 * x)

    grid_vals = [f(t) for t in np.linspace(0.0, 1.0, 8)]
    _, val = grid_then_refine(f, box, grid_per_dim=8, refine_budget=100)
    assert val >= max(grid_vals)


def test_grid_then_refine_validation():
    with pytest.raises(ValueError, match="grid_per_dim"):
        grid_then_refine(lambda x: x, Box([(0.0, 1.0)]), grid_per_dim=0)


def test_golden_max():
    x, v = golden_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
    assert abs(x - 0.3) < 1e-6
    assert abs(v) < 1e-12
    # monotone: the probed endpoint wins
    x, v = golden_max(lambda t: t, 0.0, 5.0)
    assert x == 5.0 and v == 5.0
    x, v = golden_max(lambda t: -t, 0.0, 5.0)
    assert x == 0.0 and v == 0.0
    with pytest.raises(ValueError):
        golden_max(lambda t: t, 1.0, 0.0)


def test_bisect_feasible():
    t = bisect_feasible(lambda x: x <= 0.625, 0.0, 1.0, tol=1e-12)
    assert abs(t - 0.625) < 1e-9
    assert bisect_feasible(lambda x: True, 0.0, 3.0) == 3.0
    with pytest.raises(ValueError, match="false at the lower end"):
        bisect_feasible(lambda x: False, 0.0, 1.0)


def test_simplex_matches_vertex_oracle():
    rng = np.random.default_rng(10)
    for _ in range(40):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(1, 5))
        c = rng.uniform(0.0, 2.0, size=n)
        constraints = [
            (rng.uniform(0.05, 2.0, size=n), float(rng.uniform(0.1, 5.0)))
            for _ in range(m)
        ]
        x, val = simplex_lp_max(c, constraints)
        want = lp_vertex_oracle(c, constraints)
        assert want is not None
        assert abs(val - want) < 1e-7
        assert np.all(x >= -1e-9)
        for a, b in constraints:
            assert float(np.dot(a, x)) <= b + 1e-7


def test_simplex_known_solution():
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6  ->  (1.6, 1.2), value 2.8
    x, val = simplex_lp_max([1.0, 1.0], [([1.0, 2.0], 4.0), ([3.0, 1.0], 6.0)])
    assert abs(val - 2.8) < 1e-9
    assert np.allclose(x, [1.6, 1.2], atol=1e-9)


def test_simplex_edge_cases():
    # infinite bounds are ignored
    x, val = simplex_lp_max([1.0], [([1.0], math.inf), ([2.0], 3.0)])
    assert abs(val - 1.5) < 1e-9
    with pytest.raises(InfeasibleError):
        simplex_lp_max([1.0], [([1.0], -1.0)])
    with pytest.raises(UnboundedError):
        simplex_lp_max([1.0, 1.0], [([1.0, 0.0], 1.0)])
    with pytest.raises(ValueError, match="arity"):
        simplex_lp_max([1.0, 1.0], [([1.0], 1.0)])
    with pytest.raises(ValueError, match="orthant"):
        simplex_lp_max([1.0], [([1.0], 1.0)], nonneg=False)
    # no finite constraints at all: unbounded unless c <= 0
    with pytest.raises(UnboundedError):
        simplex_lp_max([1.0], [])
    x, val = simplex_lp_max([-1.0], [])
    assert val == 0.0
