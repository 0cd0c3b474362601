"""Many simplices through one point, or through a small subset.

Every complex below is checked for proper intersections and every top
simplex must contain the pin.
"""
from emptymono import generate, simplex_hulled, star_subset
from emptymono.hull import build_hull, is_face_of_hull
from emptymono.star import fan_2d, star_3d, star_in_simplex
from emptymono.triangulation import validate_complex


def show(label, P, pts, floor):
    ok = validate_complex(P.base, pts, triangulation=False) is None
    assert all(P.pin <= s for s in P.base.top_simplices)
    print(f"  {label:<28} size {P.size:>4}  floor {floor:>4}  valid {ok}")


pts = list(simplex_hulled(20, 3, seed=1).points)
n = len(pts)
print("hull is a simplex, pin at a corner (the count is exact)")
show("corner pin", star_in_simplex(pts, 0), pts, 2 * n - 7)

pts = list(generate("random-ball", 25, 2, seed=2).points)
h = build_hull(pts)
print("planar fan")
show("hull vertex", fan_2d(pts, min(h.vertices)), pts, len(pts) - 2)
show("interior point", fan_2d(pts, min(h.interior)), pts, len(pts) - 1)

pts = list(generate("random-ball", 30, 3, seed=3).points)
h = build_hull(pts)
print("three dimensions")
show("interior pin", star_3d(pts, min(h.interior)), pts, 2 * len(pts) - 6)

pts = list(generate("random-ball", 18, 4, seed=4).points)
h = build_hull(pts)
X = next([a, b] for a in range(18) for b in range(a + 1, 18) if not is_face_of_hull([a, b], h))
print(f"pin subsets in R^4 (X = {X}, face of hull: {is_face_of_hull(X, h)})")
show("|X| = d-2", star_subset(pts, X, h), pts, 2 * len(pts) - 16)
show("|X| = d-1", star_subset(pts, X + [max(set(range(18)) - set(X))], h), pts, len(pts) - 4)
