"""Exact rational linear programming (two phase simplex, Bland's rule).

Small and dense; used for simplex intersection tests where the LPs have at
most a couple of dozen variables.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(T, basis, r, c):
    row = T[r]
    pv = row[c]
    if pv != 1:
        T[r] = row = [x / pv for x in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, ncols):
    """Maximise the objective stored in the last row (as reduced costs).

    Row convention: T[-1][j] holds -c_j + ..., so a negative entry means the
    column can still improve the objective.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        c = next((j for j in range(ncols) if obj[j] < 0), None)
        if c is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = T[i][c]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], c)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence):
    """Maximise ``c.x`` subject to ``A x = b`` and ``x >= 0``.

    Returns ``(status, value, x)`` with exact ``Fraction`` entries.
    """
    m, n = len(A), len(c)
    rows = []
    for i in range(m):
        r = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-v for v in r]
            bi = -bi
        rows.append(r + [Fraction(int(i == k)) for k in range(m)] + [bi])
    basis = [n + i for i in range(m)]
    # phase one: maximise -sum(artificials)
    obj = [Fraction(0)] * (n + m + 1)
    for r in rows:
        for j in range(n):
            obj[j] -= r[j]
        obj[-1] -= r[-1]
    T = rows + [obj]
    _run(T, basis, n + m)
    if T[-1][-1] != 0:
        return INFEASIBLE, None, None
    # drive artificials out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= n:
            c_in = next((j for j in range(n) if T[i][j] != 0), None)
            if c_in is None:
                continue  # redundant row
            _pivot(T, basis, i, c_in)
        keep.append(i)
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for i, bc in enumerate(basis):
        f = obj[bc]
        if f:
            obj = [a - f * t for a, t in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bc in enumerate(basis):
        x[bc] = T[i][-1]
    return OPTIMAL, T[-1][-1], x


def _hull_system(V, W):
    """Equality rows for sum(l_i v_i) - sum(m_j w_j) = 0, sum l = sum m = 1."""
    d = len(V[0])
    nv, nw = len(V), len(W)
    A, b = [], []
    for k in range(d):
        A.append([v[k] for v in V] + [-w[k] for w in W])
        b.append(0)
    A.append([1] * nv + [0] * nw)
    b.append(1)
    A.append([0] * nv + [1] * nw)
    b.append(1)
    return A, b


def interiors_intersect(V: Sequence[Sequence], W: Sequence[Sequence]) -> bool:
    """True when the open simplices Conv(V) and Conv(W) share a point.

    Both simplices must be full dimensional. Maximises a common lower bound
    ``t`` on every barycentric weight; the interiors meet iff ``t > 0``.
    """
    nv, nw = len(V), len(W)
    # substitute l_i = l'_i + t, m_j = m'_j + t with l', m', t >= 0
    d = len(V[0])
    A, b = [], []
    for k in range(d):
        sv = sum(v[k] for v in V)
        sw = sum(w[k] for w in W)
        A.append([v[k] for v in V] + [-w[k] for w in W] + [sv - sw])
        b.append(0)
    A.append([1] * nv + [0] * nw + [nv])
    b.append(1)
    A.append([0] * nv + [1] * nw + [nw])
    b.append(1)
    c = [0] * (nv + nw) + [1]
    status, val, _ = maximize(c, A, b)
    return status == OPTIMAL and val > 0


def proper_intersection(V: Sequence[Sequence], W: Sequence[Sequence], shared_mask) -> bool:
    """True when Conv(V) and Conv(W) meet exactly in the hull of the shared
    vertices. ``shared_mask[i]`` says whether ``V[i]`` is also a vertex of W."""
    A, b = _hull_system(V, W)
    c = [0 if s else 1 for s in shared_mask] + [0] * len(W)
    status, val, _ = maximize(c, A, b)
    if status == INFEASIBLE:
        return True
    return val == 0
