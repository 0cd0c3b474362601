"""Command-line front end.

Exit codes: 0 all certificates and emptiness checks pass, 2 a certificate or
check failed, 3 a precondition or degeneracy error, 4 a budget was exceeded.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import io as iox
from .bounds import _jsonable, certify, rational_bound
from .errors import BudgetExceeded, CertificateFailure, GeometryError, PreconditionError
from .generate import KINDS, generate
from .hull import build_hull, in_convex_position
from .order import generalized_order_lemma, order_lemma_simplex
from .pipelines import (census, combined_2color, combined_kcolor, doubling_construction,
                        exists_empty_mono, linear_witnesses, project_induct_2color,
                        project_induct_kcolor)
from .render import svg
from .star import star_subset
from .triangulation import (convex_big_triangulation, dn_log_triangulation, shelling_triangulation,
                            validate_complex)
from .witnesses import discrepancy_witnesses

TASKS = ("triangulate", "star", "order", "discrepancy", "census", "peel", "combined", "double",
         "exists", "slabs")

EXIT_OK, EXIT_CERT, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3, 4


def _all_ok(obj) -> bool:
    """False when any nested certificate or verification flag failed."""
    if isinstance(obj, dict):
        for key in ("holds", "empty_verified", "verified", "valid"):
            if obj.get(key) is False:
                return False
        return all(_all_ok(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_all_ok(v) for v in obj)
    return True


def _complex_json(K, points, validate=True, triangulation=True) -> dict:
    out = {"size": K.size, "simplices": [list(s) for s in K.sorted_simplices()]}
    if validate:
        v = validate_complex(K, points, triangulation)
        out["valid"] = v is None
        if v is not None:
            out["violation"] = {"kind": v.kind, "simplices": [list(s) for s in v.simplices],
                                "message": v.message}
    return out


def _task_triangulate(inst, args):
    pts = list(inst.points)
    d, n = inst.dim, len(pts)
    method = args.method
    if method == "auto":
        if d > 2 and n > d * (d + 1) and in_convex_position(pts):
            method = "convex"
        else:
            method = "dn-log" if d > 2 else "shelling"
    if method == "convex":
        K, cert = convex_big_triangulation(pts, args.improved)
    elif method == "dn-log":
        K, cert = dn_log_triangulation(pts, args.improved)
    else:
        K = shelling_triangulation(pts)
        cert = certify(K.size, rational_bound("n-d", n - d))
    out = _complex_json(K, pts, not args.no_validate)
    out.update(method=method, certificate=cert.to_json(),
               minimum=certify(K.size, rational_bound("n-d", n - d)).to_json())
    return out, K.sorted_simplices()


def _task_star(inst, args):
    pts = list(inst.points)
    pins = [int(x) for x in (args.pin or "").split(",") if x != ""] or [min(p.id for p in pts)]
    P = star_subset(pts, pins)
    out = _complex_json(P.base, pts, not args.no_validate, triangulation=False)
    out["pin"] = sorted(P.pin)
    out["pin_containment"] = all(P.pin <= s for s in P.base.top_simplices)
    out["certificate"] = P.certificate.to_json()
    return out, P.base.sorted_simplices()


def _task_order(inst, args):
    pts = list(inst.points)
    hull = build_hull(pts)
    if len(hull.vertices) == inst.dim + 1:
        res, kind = order_lemma_simplex(pts), "simplex"
    else:
        res, kind = generalized_order_lemma(pts, hull), "general"
    out = _complex_json(res.complex, pts, not args.no_validate)
    out.update(kind=kind, touching=res.touching, chain=list(res.chain),
               certificate=res.certificate.to_json())
    return out, res.complex.sorted_simplices()


def _colored(inst):
    if inst.colors is None:
        raise PreconditionError("bad-instance", "this task needs a colored instance")
    return inst.colored(strict=False)


def _task_discrepancy(inst, args):
    rep = discrepancy_witnesses(_colored(inst), max_pins=args.max_pins)
    return rep.to_json(), list(rep.simplices)


def _task_census(inst, args):
    S = _colored(inst) if inst.colors is not None else inst.colored()
    res = census(S, args.budget, args.jobs)
    return res.to_json(with_simplices=args.list), [s for v in res.simplices.values() for s in v]


def _task_peel(inst, args):
    S = _colored(inst)
    ts = Fraction(args.threshold_scale)
    if S.k == 2:
        out = project_induct_2color(S, args.color, ts)
    else:
        j = 0 if args.color is None else args.color
        out = project_induct_kcolor(S, j, ts)
    sims = list(out.witnesses.simplices) if out.witnesses else []
    return out.to_json(), sims


def _task_combined(inst, args):
    S = _colored(inst)
    ts = Fraction(args.threshold_scale)
    rep = combined_2color(S, args.color, ts) if S.k == 2 else combined_kcolor(S, args.color, ts)
    return rep.to_json(), list(rep.simplices)


def _task_double(inst, args):
    res = doubling_construction(list(inst.points), Fraction(args.epsilon))
    return res.to_json(), list(res.simplices)


def _task_exists(inst, args):
    rep = exists_empty_mono(_colored(inst), True, args.budget)
    return rep.to_json(), list(rep.simplices)


def _task_slabs(inst, args):
    rep = linear_witnesses(_colored(inst), args.mu, args.budget)
    return rep.to_json(), list(rep.simplices)


RUNNERS = {"triangulate": _task_triangulate, "star": _task_star, "order": _task_order,
           "discrepancy": _task_discrepancy, "census": _task_census, "peel": _task_peel,
           "combined": _task_combined, "double": _task_double, "exists": _task_exists,
           "slabs": _task_slabs}


def _echo(args, keys) -> dict:
    return {k: _jsonable(getattr(args, k)) for k in keys if getattr(args, k, None) is not None}


def _emit(text: str, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    inst = generate(args.kind, args.n, args.d, args.k, args.seed, args.box)
    _emit(iox.dumps(iox.instance_to_dict(inst)), args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    inst = iox.load_instance(args.instance)
    t0 = time.perf_counter()
    result, simplices = RUNNERS[args.task](inst, args)
    elapsed = time.perf_counter() - t0
    ok = _all_ok(result)
    command = {"name": "run", "task": args.task,
               **_echo(args, ("seed", "jobs", "budget", "pin", "color", "method", "improved",
                              "epsilon", "mu", "max_pins", "threshold_scale"))}
    rep = iox.make_report(command, inst, result, ok,
                          {"seconds": round(elapsed, 3)} if args.timing else None)
    _emit(iox.dumps(rep), args.report)
    if args.svg:
        if inst.dim != 2:
            raise GeometryError("dimension", "--svg needs a planar instance")
        Path(args.svg).write_text(svg(inst.points, inst.colors, simplices, simplices,
                                      title=f"{args.task}"))
    return EXIT_OK if ok else EXIT_CERT


def cmd_render2d(args) -> int:
    inst = iox.load_instance(args.instance)
    if inst.dim != 2:
        raise GeometryError("dimension", "render2d needs a planar instance")
    pts = list(inst.points)
    if args.overlay == "complex":
        if args.pin is not None:
            P = star_subset(pts, [int(args.pin)])
            edges, fill = P.base.sorted_simplices(), []
        else:
            edges, fill = shelling_triangulation(pts).sorted_simplices(), []
    else:
        S = inst.colored(strict=False)
        res = census(S, args.budget)
        fill = [s for v in res.simplices.values() for s in v]
        edges = []
    _emit(svg(pts, inst.colors, edges, fill, title=args.overlay), args.svg)
    return EXIT_OK


def cmd_check(args) -> int:
    from .geometry import general_position_check
    inst = iox.load_instance(args.instance)
    bad = general_position_check(list(inst.points), cap=args.cap)
    out = {"schema": iox.REPORT_SCHEMA, "command": {"name": "check"},
           "instance_digest": iox.digest(inst), "general_position": bad is None,
           "violation": list(bad) if bad else None, "n": len(inst.points), "dimension": inst.dim}
    _emit(iox.dumps(out), args.report)
    return EXIT_OK if bad is None else EXIT_PRECONDITION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emptymono",
                                 description="Triangulations and empty monochromatic simplices, exactly.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a point-set instance")
    g.add_argument("--kind", choices=KINDS, default="random-ball")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--k", type=int, default=None, help="number of colors (omit for uncolored)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--box", type=int, default=None, help="integer coordinate box")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run a construction and write a report")
    r.add_argument("task", choices=TASKS)
    r.add_argument("--instance", required=True)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--budget", type=int, default=None, help="census subset cap")
    r.add_argument("--report", default=None)
    r.add_argument("--svg", default=None)
    r.add_argument("--pin", default=None, help="comma separated pin ids (star)")
    r.add_argument("--color", type=int, default=None)
    r.add_argument("--method", choices=("auto", "convex", "dn-log", "shelling"), default="auto")
    r.add_argument("--improved", action="store_true", help="use the sharper convex constant")
    r.add_argument("--epsilon", default="1")
    r.add_argument("--mu", type=int, default=None)
    r.add_argument("--max-pins", dest="max_pins", type=int, default=None)
    r.add_argument("--threshold-scale", dest="threshold_scale", default="1")
    r.add_argument("--list", action="store_true", help="list census simplices")
    r.add_argument("--no-validate", dest="no_validate", action="store_true")
    r.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte identity)")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("render2d", help="write an SVG figure of a planar instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--overlay", choices=("complex", "witnesses"), default="complex")
    v.add_argument("--pin", default=None)
    v.add_argument("--budget", type=int, default=None)
    v.add_argument("--svg", default=None)
    v.set_defaults(func=cmd_render2d)

    c = sub.add_parser("check", help="certify general position of an instance")
    c.add_argument("--instance", required=True)
    c.add_argument("--cap", type=int, default=64)
    c.add_argument("--report", default=None)
    c.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CertificateFailure as e:
        print(f"certificate failure: {e}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
