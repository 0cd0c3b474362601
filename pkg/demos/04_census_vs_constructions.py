"""Constructions never claim more than brute force can find.

The census enumerates every same-colored (d+1)-subset. Each construction
reports witnesses that must be a subset of the census list.
"""
from emptymono import census, combined_2color, combined_kcolor, discrepancy_witnesses, generate
from emptymono.pipelines import linear_witnesses

cases = [(3, 2, 20), (3, 3, 22), (3, 4, 24), (4, 3, 16)]
for d, k, n in cases:
    S = generate("random-ball", n, d, k, seed=7).colored()
    cen = census(S)
    all_found = {s for v in cen.simplices.values() for s in v}
    line = f"d={d} k={k} n={n}: census {cen.total:>4}"
    runs = []
    if k == d + 1:
        runs.append(("slabs", linear_witnesses(S)))
    else:
        runs.append(("discrepancy", discrepancy_witnesses(S)))
        runs.append(("combined", combined_2color(S) if k == 2 else combined_kcolor(S)))
    for name, rep in runs:
        assert set(rep.simplices) <= all_found
        line += f"  {name} {rep.count:>4}"
    print(line)
