"""Doubling a point set in R^3.

Each point gets a twin a short step away; every pair of twin pairs spans a
tetrahedron and all C(n, 2) of them are pairwise interior-disjoint.
"""
import time
from math import comb

from emptymono import doubling_construction, generate

for n in (3, 5, 8):
    X = list(generate("random-ball", n, 3, seed=n, box=1000).points)
    t = time.perf_counter()
    res = doubling_construction(X)
    print(f"n={n:>2}: {len(res.simplices):>3} simplices (C(n,2) = {comb(n, 2):>3}), "
          f"epsilon {res.epsilon}, {res.pair_tests} pair tests, verified {res.verified}, "
          f"{time.perf_counter() - t:.1f}s")
