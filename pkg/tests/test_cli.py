import json
import subprocess
import sys
from pathlib import Path

import pytest

from fernlab import cli

ROOT = Path(__file__).resolve().parents[1]


def write(tmp_path, obj, name="scn.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def run_json(capsys, *argv):
    code = cli.main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 else None)


def test_dims(tmp_path, capsys):
    code, res = run_json(capsys, "dims", "--scenario", write(tmp_path, {"n": 3, "r": [1, 1, 1], "i0prime": [], "dL": 1}))
    assert code == 0
    out = res["outputs"]
    assert out["ext"]["ext1_full"]["value"] == 10
    assert out["kernel"][0]["report"]["ker_dim"]["value"] == 1


def test_gl4_verdict(tmp_path, capsys):
    scn = {"gl4": {"L12": "1", "L13": "2", "L14": "3", "L23": "1", "L34": "1"}}
    code, res = run_json(capsys, "gl4", "--scenario", write(tmp_path, scn))
    assert code == 0 and res["outputs"]["verdict"] is True


def test_gl4_degenerate_exit_code(tmp_path, capsys):
    scn = {"gl4": {"L12": "1", "L13": "1", "L14": "3", "L23": "1", "L34": "1"}}
    assert cli.main(["gl4", "--scenario", write(tmp_path, scn)]) == 3


def test_steinberg_dot(tmp_path, capsys):
    dot = tmp_path / "lattice.dot"
    code, res = run_json(capsys, "steinberg", "--scenario", write(tmp_path, {"k": 3}), "--dot", str(dot))
    assert code == 0 and res["outputs"]["interval_size"]["value"] == 4
    assert dot.read_text().count("->") == 4
    assert res["outputs"]["total"]["value"] == 6


@pytest.mark.parametrize("command", ["envelope", "fern", "lines", "flatten"])
def test_shape_commands(tmp_path, capsys, command):
    code, res = run_json(capsys, command, "--scenario", write(tmp_path, {"n": 4, "r": [1, 1, 2], "i0prime": [2], "dL": 1}))
    assert code == 0 and res["command"] == command


def test_lines_from_given_g_is_critical(tmp_path, capsys):
    scn = {"n": 2, "r": [1, 1], "dL": 1, "g": [["1", "0"], ["0", "1"]]}
    assert cli.main(["lines", "--scenario", write(tmp_path, scn)]) == 3


def test_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense", "--scenario", "x"])
    assert exc.value.code == 1
    assert cli.main(["dims", "--scenario", write(tmp_path, "{not json")]) == 2
    assert cli.main(["dims", "--scenario", write(tmp_path, {"n": 5, "r": [1, 1]})]) == 2
    assert cli.main(["dims", "--scenario", write(tmp_path, {"r": [1, 1], "bogus": 1})]) == 2
    assert cli.main(["steinberg", "--scenario", write(tmp_path, {})]) == 2
    assert cli.main(["dims", "--scenario", write(tmp_path, {"r": [1, 1]}), "--samples", "0"]) == 1


def test_table_mode(tmp_path, capsys):
    assert cli.main(["dims", "--scenario", write(tmp_path, {"r": [1, 2]})]) == 0
    assert "ext.ext1_full" in capsys.readouterr().out


def test_console_module_runs(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "fernlab", "gl4", "--json", "--scenario",
                           str(ROOT / "scenarios" / "gl4.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["outputs"]["verdict"] is True
