"""How big can a triangulation get?

Random point sets in R^3 are triangulated three ways and the sizes are set
against the floors each construction guarantees. Run from the repo root:

    python3 demos/01_triangulation_sizes.py
"""
from emptymono import convex_big_triangulation, dn_log_triangulation, generate, shelling_triangulation
from emptymono.triangulation import validate_complex

d = 3
print(f"{'n':>4} {'shelling':>9} {'dn-log':>7} {'floor n-d':>10} {'branch':>14}")
for n in (10, 16, 24, 32, 40):
    pts = list(generate("random-ball", n, d, seed=n).points)
    K = shelling_triangulation(pts)
    K2, cert = dn_log_triangulation(pts)
    assert validate_complex(K2, pts) is None
    print(f"{n:>4} {K.size:>9} {K2.size:>7} {n - d:>10} {cert.details['branch']:>14}")

# Convex position is where the big constructions shine: (d+1)n - c_d.
print()
print(f"{'n':>4} {'size':>6} {'(d+1)n-39':>10} {'improved':>9} {'(d+1)n-25':>10}")
for n in (13, 20, 30, 45, 60):
    pts = list(generate("convex", n, d, seed=n).points)
    K, c = convex_big_triangulation(pts)
    Ki, ci = convex_big_triangulation(pts, improved=True)
    print(f"{n:>4} {K.size:>6} {4 * n - 39:>10} {Ki.size:>9} {4 * n - 25:>10}")
