import json
import subprocess
import sys

import pytest

from emptymono import io as iox
from emptymono.cli import main
from emptymono.errors import PreconditionError
from emptymono.generate import generate, simplex_hulled


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def inst3(tmp_path):
    p = tmp_path / "i3.json"
    assert main(["generate", "--kind", "random-ball", "--n", "16", "--d", "3", "--k", "3",
                 "--seed", "4", "--out", str(p)]) == 0
    return p


def test_generate_round_trip(tmp_path):
    for kind, d in [("random-ball", 3), ("moment-curve", 4), ("convex", 3), ("grid-perturbed", 2), ("doubled", 3)]:
        inst = generate(kind, 10, d, 2, seed=1)
        p = tmp_path / f"{kind}.json"
        iox.save_instance(inst, p)
        back = iox.load_instance(p)
        assert back.points == inst.points and back.colors == inst.colors and back.k == inst.k
        assert iox.digest(back) == iox.digest(inst)


def test_rejects_float_coordinates(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"points": [[0.5, 1], [2, 3], [4, 1]]}))
    with pytest.raises(PreconditionError):
        iox.load_instance(p)
    assert main(["check", "--instance", str(p)]) == 3


@pytest.mark.parametrize("task,extra", [("triangulate", []), ("star", ["--pin", "0"]), ("census", ["--list"]),
                                        ("discrepancy", ["--max-pins", "4"]), ("combined", []),
                                        ("peel", ["--threshold-scale", "100"])])
def test_run_reports_are_deterministic(inst3, tmp_path, task, extra):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", task, "--instance", str(inst3), "--report", str(a)] + extra) == 0
    assert main(["run", task, "--instance", str(inst3), "--report", str(b)] + extra) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["schema"] == iox.REPORT_SCHEMA and rep["ok"] is True
    assert "timing" not in rep


def test_order_and_exists_and_slabs(tmp_path):
    p = tmp_path / "s.json"
    iox.save_instance(simplex_hulled(10, 3, 0), p)
    assert main(["run", "order", "--instance", str(p), "--report", str(tmp_path / "o.json")]) == 0
    q = tmp_path / "k4.json"
    iox.save_instance(generate("random-ball", 20, 3, 4, 2), q)
    assert main(["run", "exists", "--instance", str(q), "--report", str(tmp_path / "e.json")]) == 0
    assert main(["run", "slabs", "--instance", str(q), "--report", str(tmp_path / "l.json")]) == 0


def test_double(tmp_path, capsys):
    p = tmp_path / "x.json"
    iox.save_instance(generate("random-ball", 4, 3, seed=0), p)
    code, out, _ = _run(["run", "double", "--instance", str(p)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["verified"] and len(rep["result"]["simplices"]) == 6


def test_exit_codes(tmp_path, capsys):
    big = tmp_path / "big.json"
    iox.save_instance(generate("random-ball", 60, 3, 2, seed=0), big)
    code, _, err = _run(["run", "census", "--instance", str(big)], capsys)
    assert code == 4 and err.startswith("error: census-too-large")
    code, _, err = _run(["run", "exists", "--instance", str(big)], capsys)
    assert code == 3 and "bad-regime" in err
    plain = tmp_path / "plain.json"
    iox.save_instance(generate("random-ball", 10, 3, seed=0), plain)
    code, _, err = _run(["run", "discrepancy", "--instance", str(plain)], capsys)
    assert code == 3
    code, _, _ = _run(["run", "census", "--instance", str(tmp_path / "missing.json")], capsys)
    assert code == 3


def test_check_and_render(tmp_path, capsys):
    p = tmp_path / "p.json"
    iox.save_instance(generate("random-ball", 12, 2, 2, seed=3), p)
    code, out, _ = _run(["check", "--instance", str(p)], capsys)
    assert code == 0 and json.loads(out)["general_position"] is True
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for target in (a, b):
        assert main(["render2d", "--instance", str(p), "--overlay", "witnesses", "--svg", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes() and a.read_text().startswith("<svg")
    assert main(["render2d", "--instance", str(p), "--pin", "0", "--svg", str(tmp_path / "c.svg")]) == 0
    flat = tmp_path / "flat.json"
    flat.write_text(json.dumps({"points": [[0, 0], [1, 1], [2, 2], [5, 0]]}))
    assert main(["check", "--instance", str(flat)]) == 3


def test_module_entry_point(inst3):
    r = subprocess.run([sys.executable, "-m", "emptymono", "run", "census", "--instance", str(inst3)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["ok"]
