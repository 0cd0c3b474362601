import itertools
from fractions import Fraction

import pytest

ACCEPTANCE_LINES = []


def record(criterion: int, ok: bool, summary: str) -> str:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {summary}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


# ---------------------------------------------------------------- oracles shared by tests

def frac_det(m):
    """Plain Laplace expansion over Fractions (independent of the library)."""
    m = [[Fraction(x) for x in row] for row in m]
    if len(m) == 1:
        return m[0][0]
    total = Fraction(0)
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * a * frac_det(minor)
    return total


def strictly_inside(x, simplex):
    """Cramer-rule barycentric coordinates, all strictly positive."""
    d = len(x)
    base = simplex[0]
    cols = [[Fraction(v[i]) - Fraction(base[i]) for i in range(d)] for v in simplex[1:]]
    D = frac_det([[c[i] for c in cols] for i in range(d)])
    if D == 0:
        return False
    rhs = [Fraction(x[i]) - Fraction(base[i]) for i in range(d)]
    lam = []
    for k in range(d):
        mk = [[(rhs[i] if t == k else cols[t][i]) for t in range(d)] for i in range(d)]
        lam.append(frac_det(mk) / D)
    return all(l > 0 for l in lam) and sum(lam) < 1


def _cramer_weights(simplex):
    """Precompute the Cramer system of a simplex; None when it is flat."""
    d = len(simplex[0])
    base = [Fraction(c) for c in simplex[0]]
    cols = [[Fraction(v[i]) - base[i] for i in range(d)] for v in simplex[1:]]
    D = frac_det([[c[i] for c in cols] for i in range(d)])
    if D == 0:
        return None
    # adjugate rows: lambda_k = sum_i adj[k][i] * (x_i - base_i) / D
    adj = []
    for k in range(d):
        row = []
        for i in range(d):
            unit = [[Fraction(int(r == i)) if t == k else cols[t][r] for t in range(d)] for r in range(d)]
            row.append(frac_det(unit))
        adj.append(row)
    return base, adj, D


def brute_empty(simplex_ids, coords):
    verts = [coords[v] for v in simplex_ids]
    sys_ = _cramer_weights(verts)
    if sys_ is None:
        return True
    base, adj, D = sys_
    d = len(base)
    lo = [min(v[i] for v in verts) for i in range(d)]
    hi = [max(v[i] for v in verts) for i in range(d)]
    for i, c in coords.items():
        if i in simplex_ids or any(not lo[t] < c[t] < hi[t] for t in range(d)):
            continue
        rhs = [Fraction(c[t]) - base[t] for t in range(d)]
        lam = [sum(a * r for a, r in zip(row, rhs)) / D for row in adj]
        if all(l > 0 for l in lam) and sum(lam) < 1:
            return False
    return True


def brute_census(S):
    """Independent census: per color count of empty same-colored simplices."""
    coords = {p.id: p.coords for p in S.points}
    d = S.dim
    out = {c: 0 for c in range(S.k)}
    for c in range(S.k):
        ids = sorted(i for i in coords if S.colors[i] == c)
        for s in itertools.combinations(ids, d + 1):
            verts = [coords[v] for v in s]
            rows = [[a - b for a, b in zip(v, verts[0])] for v in verts[1:]]
            if frac_det(rows) != 0 and brute_empty(s, coords):
                out[c] += 1
    return out


@pytest.fixture
def record_line():
    return record
