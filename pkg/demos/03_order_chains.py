"""Facet orders inside a simplex and the chains they force.

For a facet F, p < q when p sits inside Conv(F + q). Long chains nest
inside each other, so inserting them keeps many simplices on the hull.
"""
from emptymono import order_lemma_simplex, simplex_hulled
from emptymono.bounds import int_root_ceil

for d in (2, 3):
    print(f"d = {d}")
    print(f"  {'eta':>4} {'chain':>6} {'need':>5} {'touching':>9} {'floor':>6}")
    for eta in (4, 9, 16, 25, 36):
        pts = list(simplex_hulled(eta, d, seed=eta).points)
        res = order_lemma_simplex(pts)
        floor = (d - 1) * eta + len(res.chain) + 1
        print(f"  {eta:>4} {len(res.chain):>6} {int_root_ceil(eta, d - 1):>5} {res.touching:>9} {floor:>6}")
