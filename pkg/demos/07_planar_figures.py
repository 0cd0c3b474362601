"""SVG figures of a two-colored planar set.

Writes fan.svg and witnesses.svg next to this script.
"""
from pathlib import Path

from emptymono import census, generate
from emptymono.render import svg
from emptymono.star import fan_2d

out = Path(__file__).resolve().parent
inst = generate("random-ball", 24, 2, 2, seed=9)
S = inst.colored()
P = fan_2d(list(inst.points), 0)
(out / "fan.svg").write_text(svg(inst.points, inst.colors, P.base.sorted_simplices(), (), "fan at point 0"))
res = census(S)
fill = [s for v in res.simplices.values() for s in v]
(out / "witnesses.svg").write_text(svg(inst.points, inst.colors, (), fill, "empty monochromatic triangles"))
print(f"fan with {P.size} triangles, {res.total} empty monochromatic triangles; figures in {out}")
