import json
import os
import subprocess
import sys

import pytest

from arckh import library
from arckh.cli import main
from arckh.tangles import braid_tangle, to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kh_unknot_exact(capsys):
    code, out, _ = run(capsys, "kh", "unknot")
    assert code == 0
    assert out.strip() == '[{"h":0,"q":-1,"free":1},{"h":0,"q":1,"free":1}]'


def test_kh_file_matches_golden(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps(to_json(library.diagram("5_2"))))
    code, out, _ = run(capsys, "kh", str(f))
    assert code == 0
    assert json.loads(out) == library.golden("5_2").to_json()


def test_kh_open_tangle_needs_caps(capsys, tmp_path):
    f = tmp_path / "t.json"
    f.write_text(json.dumps(to_json(braid_tangle(2, [1]))))
    code, _, err = run(capsys, "kh", str(f))
    assert code == 2 and "caps" in err
    code, out, _ = run(capsys, "kh", str(f), "--caps", "[[1,4],[2,3]]")
    assert code == 0
    assert sum(r["free"] for r in json.loads(out)) == 2


def test_kh_wrong_inner_caps(capsys, tmp_path):
    f = tmp_path / "t.json"
    f.write_text(json.dumps(to_json(braid_tangle(2, [1]))))
    code, _, err = run(capsys, "kh", str(f), "--caps", '{"inner":[[[1,2]]],"outer":[[1,4],[2,3]]}')
    assert code == 2 and "inner" in err


@pytest.mark.parametrize("text", ["{", '{"n": 0, "crossings": [[1, 2, 3]]}'])
def test_kh_bad_input(capsys, tmp_path, text):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, out, err = run(capsys, "kh", str(f))
    assert code == 2 and out == "" and err.startswith("error:")


def test_kh_missing_file(capsys):
    code, _, err = run(capsys, "kh", "/nonexistent/file.json")
    assert code == 2 and "cannot read" in err


def test_map_torus(capsys):
    code, out, _ = run(capsys, "map", "torus")
    d = json.loads(out)
    assert code == 0 and d["chi"] == 0
    (m,) = d["maps"]
    assert m["source_dim"] == m["target_dim"] == 1
    assert m["entries"] in ([[0, 0, 2]], [[0, 0, -2]])


def test_map_birth(capsys):
    code, out, _ = run(capsys, "map", "birth")
    d = json.loads(out)
    assert code == 0 and d["chi"] == 1 and d["qdegree"] == -1
    assert d["maps"][0]["induced"][0]["matrix"] in ([[1]], [[-1]])


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "euler", "--seed", "3")
    (r,) = json.loads(out)
    assert code == 0 and r["suite"] == "euler" and r["passed"]


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and err.startswith("error:")


def test_subprocess_all_with_threads():
    env = dict(os.environ, KH_THREADS="2")
    p = subprocess.run([sys.executable, "-m", "arckh.cli", "verify", "--suite", "all"],
                       capture_output=True, text=True, env=env, timeout=600)
    assert p.returncode == 0, p.stderr
    assert all(r["passed"] for r in json.loads(p.stdout))
