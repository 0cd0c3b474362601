import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from emptymono.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, interiors_intersect, maximize, proper_intersection


def _scipy_max(c, A, b):
    res = linprog(-np.array(c, float), A_eq=np.array(A, float), b_eq=np.array(b, float),
                  bounds=[(0, None)] * len(c), method="highs")
    return res


@pytest.mark.parametrize("seed", range(40))
def test_maximize_matches_scipy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(2, 6)
    A = [[rng.randint(-4, 6) for _ in range(n)] for _ in range(m)]
    x0 = [rng.randint(0, 3) for _ in range(n)]
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    if rng.random() < 0.3:
        b[0] += 1                     # sometimes break feasibility
    c = [rng.randint(-3, 3) for _ in range(n)]
    status, val, x = maximize(c, A, b)
    ref = _scipy_max(c, A, b)
    if ref.status == 2:
        assert status == INFEASIBLE
    elif ref.status == 3:
        assert status == UNBOUNDED
    else:
        assert status == OPTIMAL
        assert abs(float(val) + ref.fun) < 1e-7
        assert all(v >= 0 for v in x)
        assert all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(A, b))


def _tet(rng, box=6):
    while True:
        V = [tuple(rng.randint(-box, box) for _ in range(3)) for _ in range(4)]
        M = np.array([np.subtract(v, V[0]) for v in V[1:]], float)
        if abs(np.linalg.det(M)) > 0.5:
            return V


def _scipy_interiors_meet(V, W):
    # maximise t with all barycentric weights >= t
    nv, nw = len(V), len(W)
    nvar = nv + nw + 1
    A_eq, b_eq = [], []
    for k in range(3):
        A_eq.append([v[k] for v in V] + [-w[k] for w in W] + [0])
        b_eq.append(0)
    A_eq.append([1] * nv + [0] * nw + [0]); b_eq.append(1)
    A_eq.append([0] * nv + [1] * nw + [0]); b_eq.append(1)
    A_ub = []
    for i in range(nv + nw):
        row = [0] * nvar
        row[i] = -1
        row[-1] = 1
        A_ub.append(row)
    res = linprog([0] * (nvar - 1) + [-1], A_ub=A_ub, b_ub=[0] * len(A_ub), A_eq=A_eq, b_eq=b_eq,
                  bounds=[(0, None)] * (nvar - 1) + [(None, 1)], method="highs")
    return res.status == 0 and -res.fun > 1e-9


@pytest.mark.parametrize("seed", range(60))
def test_interiors_intersect_matches_float_oracle(seed):
    rng = random.Random(100 + seed)
    V, W = _tet(rng), _tet(rng)
    assert interiors_intersect(V, W) == _scipy_interiors_meet(V, W)


def test_shared_facet_is_proper_and_disjoint_interiors():
    a, b, c = (0, 0, 0), (4, 0, 0), (0, 4, 0)
    up, down = (1, 1, 3), (1, 1, -3)
    V, W = [a, b, c, up], [a, b, c, down]
    assert not interiors_intersect(V, W)
    assert proper_intersection(V, W, [True, True, True, False])
    # a point pushed through the shared facet makes the intersection improper
    W2 = [a, b, c, (1, 1, 1)]
    assert interiors_intersect(V, W2)
    assert not proper_intersection(V, W2, [True, True, True, False])


def test_translated_copy_far_away_is_disjoint():
    V = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    W = [tuple(c + 10 for c in v) for v in V]
    assert not interiors_intersect(V, W)
    assert proper_intersection(V, W, [False] * 4)
    assert interiors_intersect(V, V)
