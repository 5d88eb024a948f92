import json
import math

import pytest

from diskcover.bounds import theorem1_upper
from diskcover.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_square_chain(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "construct", "--type", "square-chain", "--n", 3, "--out", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["disks"]) == 3
    assert doc["rect"]["w"] == pytest.approx(4.2426, abs=1e-4)
    assert doc["rect"]["h"] == pytest.approx(1.4142, abs=1e-4)


def test_construct_hex_and_bad_k(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert run(capsys, "construct", "--type", "hex", "--k", 5, "--out", out)[0] == 0
    assert len(json.loads(out.read_text())["disks"]) == 25
    assert run(capsys, "construct", "--type", "hex", "--k", 0, "--out", out)[0] == 2
    assert run(capsys, "construct", "--type", "square-chain", "--out", out)[0] == 2


def test_construction_error_exit_1(tmp_path, capsys):
    code, _, err = run(capsys, "construct", "--type", "aniso", "--n", 2, "--c1", 0.1, "--out", tmp_path / "a.json")
    assert code == 1 and "error" in err


def test_verify_exit_codes(tmp_path, capsys):
    h = tmp_path / "h.json"
    run(capsys, "construct", "--type", "hex", "--k", 3, "--out", h)
    code, out, _ = run(capsys, "verify", h, "--eps", "1e-3")
    assert code == 0 and "Covered" in out

    doc = json.loads(h.read_text())
    doc["rect"]["w"] *= 1.2
    big = tmp_path / "big.json"
    big.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", big)
    assert code == 1
    witness = out.split("witness")[1].split()
    assert all(len(part.split(".")[1]) == 12 for part in witness)

    t = [2 * math.pi * i / 12 for i in range(12)]
    crowded = {
        "schema_version": "1",
        "rect": {"w": 1.0, "h": 1.0},
        "disks": [{"x": 0.5 + 0.45 * math.cos(a), "y": 0.5 + 0.45 * math.sin(a)} for a in t],
        "radius": 1.0,
    }
    und = tmp_path / "und.json"
    und.write_text(json.dumps(crowded))
    assert run(capsys, "verify", und, "--eps", 2.0)[0] == 3


def test_format_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "verify", bad)[0] == 2
    bad.write_text('{"schema_version": "9", "rect": {"w": 1, "h": 1}, "disks": [], "radius": 1.0}')
    assert run(capsys, "voronoi", bad)[0] == 2
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_constants_and_bounds(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0 and "alpha_lower 0.727384" in out
    code, out, _ = run(capsys, "bounds", "--n", 25, "--psi", 4)
    assert code == 0
    assert "2n 50" in out
    assert f"theorem1_upper {theorem1_upper(25):.5f}" in out
    assert "psi_refinement 1.250000" in out


def test_minimize_report(tmp_path, capsys):
    rep = tmp_path / "m.json"
    code, out, _ = run(capsys, "minimize", "--grid", 0.02, "--report", rep)
    assert code == 0 and "envelope_min_in_symmetric_region True" in out
    doc = json.loads(rep.read_text())
    assert doc["kind"] == "minimization"


def test_voronoi_and_render(tmp_path, capsys):
    h = tmp_path / "h.json"
    run(capsys, "construct", "--type", "hex", "--k", 3, "--out", h)
    a, b, rep = tmp_path / "a.svg", tmp_path / "b.svg", tmp_path / "v.json"
    code, out, _ = run(capsys, "voronoi", h, "--svg", a, "--report", rep)
    assert code == 0 and "euler 1" in out
    assert json.loads(rep.read_text())["payload"]["n"] == 9
    assert run(capsys, "render", h, "--out", b, "--cells")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_search_streams_json(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, text, _ = run(capsys, "search", "--n", 2, "--budget", 200, "--seed", 4, "--out", out)
    assert code == 0
    lines = [json.loads(line) for line in text.splitlines()]
    assert lines[0]["iteration"] == 0
    final = lines[-1]["final"]
    assert final["area"] == pytest.approx(4.0, abs=1e-3)
    assert json.loads(out.read_text())["metadata"]["seed"] == 4
