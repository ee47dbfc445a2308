import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from fourierknot.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_json_3_7(capsys):
    code, out, _ = run_cli(capsys, "gen", "-p", "3", "-q", "7")
    assert code == 0
    data = json.loads(out)
    assert data["y"][0][2] == pytest.approx(0.5235987755982988, abs=0)
    assert "0.52359877559829882" in out  # 17 significant digits on the wire


def test_gen_rejects_equal_windings(capsys):
    code, _, err = run_cli(capsys, "gen", "-p", "3", "-q", "3")
    assert code == 2
    assert "p < q required" in err


def test_gen_simplified_phases(capsys):
    code, out, _ = run_cli(capsys, "gen", "-p", "2", "-q", "3", "--simplified")
    assert code == 0
    data = json.loads(out)
    assert data["z"][0][2] == pytest.approx(math.pi / 2)
    assert data["z"][1][2] == pytest.approx(math.pi / 4)


def test_gen_standard_form(capsys):
    code, out, _ = run_cli(capsys, "gen", "-p", "2", "-q", "3", "--standard", "--major", "2", "--minor", "1")
    assert code == 0
    data = json.loads(out)
    assert data["x"] == [[2, 2, 0], [0.5, 5, 0], [0.5, 1, 0]]
    assert len(data["z"]) == 1


def test_gen_text_degrees(capsys):
    code, out, _ = run_cli(capsys, "gen", "-p", "2", "-q", "3", "--format", "text", "--degrees")
    assert code == 0
    assert "cos(3*t + 45" in out  # pi/4 rad shown as 45 degrees


def test_crossings_count_3_7(capsys):
    code, out, _ = run_cli(capsys, "crossings", "-p", "3", "-q", "7", "--format", "json")
    assert code == 0
    records = json.loads(out)
    assert len(records) == 32
    keys = [(r["t1"], r["t2"]) for r in records]
    assert keys == sorted(keys)


def test_crossings_check_agrees(capsys):
    code, _, _ = run_cli(capsys, "crossings", "-p", "2", "-q", "3", "--numeric", "--grid", "512", "--check")
    assert code == 0


def test_crossings_check_disagreement_exits_3(capsys, monkeypatch):
    import fourierknot.cli as cli_mod
    from fourierknot import find_crossings_numeric

    def broken(knot, grid, diagnostics=None):
        cs = find_crossings_numeric(knot, grid)
        return type(cs)(cs.knot, cs.crossings[:-1], cs.method)

    monkeypatch.setattr(cli_mod, "find_crossings_numeric", broken)
    code, _, err = run_cli(capsys, "crossings", "-p", "2", "-q", "3", "--numeric", "--grid", "512", "--check")
    assert code == 3
    assert "disagreement" in err


def test_crossings_non_coprime(capsys):
    code, _, err = run_cli(capsys, "crossings", "-p", "2", "-q", "4")
    assert code == 2
    assert "coprime" in err


def test_crossings_csv(capsys):
    code, out, _ = run_cli(capsys, "crossings", "-p", "2", "-q", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,k,j,t1,t2,sign,over,x,y"
    assert len(lines) == 8


def test_verify_smallest_pair(capsys):
    code, out, _ = run_cli(capsys, "verify", "--pmax", "2", "--qmax", "3")
    assert code == 0
    assert "all 1 pairs pass" in out
    assert "intercept certified as (1/p - 1/q) * pi/2" in out
    assert "s" in out  # wall time column rendered


def test_verify_range(capsys):
    code, out, _ = run_cli(capsys, "verify", "--pmax", "5", "--qmax", "9")
    assert code == 0
    assert "all 15 pairs pass" in out
    for pair in ["2   3", "3   5", "4   9", "5   9"]:
        assert pair in out


def test_verify_failure_exits_1(capsys, monkeypatch):
    import fourierknot.cli as cli_mod
    from fourierknot import IdentificationFailure

    def always_fails(knot, crossings, params, engine="auto"):
        raise IdentificationFailure("type1-handedness", "forced failure for the test")

    monkeypatch.setattr(cli_mod, "identify", always_fails)
    code, out, err = run_cli(capsys, "verify", "--pmax", "2", "--qmax", "3")
    assert code == 1
    assert "FAIL" in out
    assert "failed" in err


def test_render_break_counts(tmp_path, capsys):
    out_path = tmp_path / "t23.svg"
    code, _, _ = run_cli(capsys, "render", "-p", "2", "-q", "3", "-o", str(out_path))
    assert code == 0
    svg = out_path.read_text()
    ET.fromstring(svg)
    assert svg.count('class="strand"') == 7


def test_render_3_7_break_count(tmp_path, capsys):
    out_path = tmp_path / "t37.svg"
    code, _, _ = run_cli(capsys, "render", "-p", "3", "-q", "7", "-o", str(out_path))
    assert code == 0
    svg = out_path.read_text()
    ET.fromstring(svg)
    assert svg.count('class="strand"') == 32
    assert 'class="arrow"' in svg


def test_phase_map_svg(tmp_path, capsys):
    out_path = tmp_path / "map.svg"
    code, _, _ = run_cli(
        capsys, "phase-map", "-p", "2", "-q", "3", "--grid", "64", "-o", str(out_path),
        "--mark-theorem-points",
    )
    assert code == 0
    svg = out_path.read_text()
    ET.fromstring(svg)
    assert 'class="mark"' in svg
    assert 'class="singular"' in svg


def test_phase_map_marks_default_on_and_disable(tmp_path, capsys):
    marked = tmp_path / "marked.svg"
    bare = tmp_path / "bare.svg"
    code, _, _ = run_cli(capsys, "phase-map", "-p", "2", "-q", "3", "--grid", "64", "-o", str(marked))
    assert code == 0
    code, _, _ = run_cli(
        capsys, "phase-map", "-p", "2", "-q", "3", "--grid", "64", "-o", str(bare),
        "--no-mark-theorem-points",
    )
    assert code == 0
    assert 'class="mark"' in marked.read_text()
    assert 'class="mark"' not in bare.read_text()


def test_phase_map_png(tmp_path, capsys):
    out_path = tmp_path / "map.png"
    code, _, _ = run_cli(capsys, "phase-map", "-p", "2", "-q", "3", "--grid", "64", "-o", str(out_path))
    assert code == 0
    assert out_path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_phase_map_grid_too_small(capsys):
    code, _, err = run_cli(capsys, "phase-map", "-p", "2", "-q", "3", "--grid", "8")
    assert code == 2
    assert "64" in err


def test_determinism_byte_identical():
    cmd = [sys.executable, "-m", "fourierknot", "crossings", "-p", "3", "-q", "7", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True).stdout
    b = subprocess.run(cmd, capture_output=True).stdout
    assert a == b and len(a) > 100


def test_knot_log_env(capsys, monkeypatch):
    monkeypatch.setenv("KNOT_LOG", "DEBUG")
    code, out, _ = run_cli(capsys, "gen", "-p", "2", "-q", "3")
    assert code == 0
    json.loads(out)
