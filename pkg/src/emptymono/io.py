"""Instance files and run reports.

Coordinates are written as strings ("3", "-7/2") so that nothing passes
through floating point. Reports are JSON with sorted keys and a schema tag.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .errors import PreconditionError
from .generate import Instance
from .geometry import Point, check_points

INSTANCE_SCHEMA = "emptymono-instance/1"
REPORT_SCHEMA = "emptymono-report/1"


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse(c) -> Fraction:
    if isinstance(c, bool) or isinstance(c, float):
        raise PreconditionError("bad-instance", f"coordinate {c!r} must be an integer or a 'p/q' string")
    try:
        return Fraction(c)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise PreconditionError("bad-instance", f"bad coordinate {c!r}") from e


def instance_to_dict(inst: Instance) -> dict:
    out = {"schema": INSTANCE_SCHEMA, "dimension": inst.dim,
           "points": [{"id": p.id, "coords": [_fmt(c) for c in p.coords]} for p in inst.points],
           "kind": inst.kind, "seed": inst.seed, "general_position": inst.general_position,
           "params": inst.params}
    if inst.colors is not None:
        out["k"] = inst.k
        out["colors"] = {str(i): c for i, c in sorted(inst.colors.items())}
    return out


def instance_from_dict(data: dict) -> Instance:
    if not isinstance(data, dict) or "points" not in data:
        raise PreconditionError("bad-instance", "an instance needs a 'points' list")
    pts = []
    for t, row in enumerate(data["points"]):
        if isinstance(row, dict):
            pid, coords = row.get("id", t), row["coords"]
        else:
            pid, coords = t, row
        pts.append(Point(int(pid), tuple(_parse(c) for c in coords)))
    if not pts:
        raise PreconditionError("bad-instance", "no points")
    d = check_points(pts, data.get("dimension"))
    colors = data.get("colors")
    k = data.get("k")
    if colors is not None:
        if isinstance(colors, list):
            colors = {p.id: int(c) for p, c in zip(pts, colors)}
        else:
            colors = {int(i): int(c) for i, c in colors.items()}
        k = int(k) if k is not None else len(set(colors.values()))
    return Instance(tuple(pts), colors, k, data.get("kind", ""), data.get("seed"),
                    data.get("general_position", "unchecked"), data.get("params", {}) or {})


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps(instance_to_dict(inst)))


def load_instance(path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise PreconditionError("bad-instance", f"cannot read {path}: {e}") from e
    return instance_from_dict(data)


def digest(inst: Instance) -> str:
    """Digest of the canonical point/color content (not the metadata)."""
    d = instance_to_dict(inst)
    core = {"points": d["points"], "colors": d.get("colors"), "k": d.get("k")}
    return hashlib.sha256(json.dumps(core, sort_keys=True).encode()).hexdigest()


def make_report(command: dict, inst: Instance, result: dict, ok: bool, timing=None) -> dict:
    rep = {"schema": REPORT_SCHEMA, "command": command, "instance_digest": digest(inst),
           "ok": ok, "result": result}
    if timing is not None:
        rep["timing"] = timing
    return rep
