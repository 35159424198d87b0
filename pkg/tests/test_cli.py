import json
import subprocess
import sys

import pytest

from flatlattice import cli
from flatlattice import matroid as mt
from flatlattice import subsets as ss


def _run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


def test_matroid_summary(files, capsys):
    path = files("fano.json", {"type": "fano"})
    code, out, _ = _run(["matroid", path], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "PASS"
    assert rep["inputs"][path]
    rota = next(r for r in rep["records"] if r["name"] == "rota")
    assert rota["data"]["mobius"] == -8 and rota["data"]["spheres"] == 8


def test_filtered_seven_point_fails_cm(files, capsys):
    M = mt.seven_point_example()
    path = files("seven.json", {"n": 7, "flats": [list(ss.elements(F)) for F in M.flats]})
    code, out, _ = _run(["filtered", path, "--omega", "1,1,-3,-3,-3,1,1", "--t", "0"], capsys)
    rep = json.loads(out)
    assert code == 1
    by = {r["name"]: r for r in rep["records"]}
    assert by["cohen_macaulay"]["data"]["verdict"] == "FAIL"
    assert by["homology"]["data"]["components"] == 2
    assert by["purity"]["data"]["elements"] == ["{1}", "{2}", "{6}", "{7}", "{1,2}", "{6,7}"]


def test_filtered_in_range_passes(files, capsys):
    path = files("u36.json", {"type": "uniform", "r": 3, "n": 6})
    code, out, _ = _run(["filtered", path, "--omega", "[5, -7, 2, 11, -13, 1]", "--t", "-3"], capsys)
    assert code == 0, out


def test_shell_boolean_and_brute_force(files, capsys):
    path = files("b4.json", {"type": "boolean", "n": 4})
    code, out, _ = _run(["shell", path, "--omega", "3,3/2,-1/2,-2", "--t", "-1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["records"][0]["data"]["first_is_decreasing"]
    path = files("u23.json", {"type": "uniform", "r": 2, "n": 3})
    code, out, _ = _run(["shell", path, "--omega", "1,2,-4", "--t", "-2"], capsys)
    assert code == 0


def test_bergman_actions(files, capsys):
    path = files("k4.json", {"type": "graphic", "edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]})
    assert _run(["bergman", path, "balance"], capsys)[0] == 0
    assert _run(["bergman", path, "positive", "--normal", "1,-2,4,-8,16"], capsys)[0] == 0
    assert _run(["bergman", path, "lefschetz", "--normal", "1,-2,4,-8,16"], capsys)[0] == 0
    code, _, err = _run(["bergman", path, "positive"], capsys)
    assert code == 2 and "--normal" in err


def test_hodge_regions(files, capsys):
    path = files("u35.json", {"type": "uniform", "r": 3, "n": 5})
    code, out, _ = _run(["hodge", path, "--p", "1", "--region", "ball"], capsys)
    rep = json.loads(out)
    assert code == 0 and any(r["name"] == "cone_iso" for r in rep["records"])
    code, out, _ = _run(["hodge", path, "--p", "0", "--region", "halflink", "--ring", "rat",
                         "--normal", "1,-2,4,-8"], capsys)
    assert code == 0
    code, _, err = _run(["hodge", path, "--p", "9", "--region", "link"], capsys)
    assert code == 2


def test_worked_examples_report_u34_only(capsys):
    code, out, _ = _run(["paper-examples"], capsys)
    rep = json.loads(out)
    assert code == 1
    assert [r["name"] for r in rep["records"] if r["verdict"] == "FAIL"] == ["example[u34]"]


def test_suite_is_deterministic(tmp_path, capsys):
    out_file = tmp_path / "r.json"
    code1, out1, _ = _run(["--out", str(out_file), "suite", "--max-n", "3", "--seed", "5"], capsys)
    code2, out2, _ = _run(["suite", "--max-n", "3", "--seed", "5"], capsys)
    assert out1 == out2 == out_file.read_text()
    rep = json.loads(out1)
    assert code1 == code2 == 1
    assert [r["name"] for r in rep["records"] if r["verdict"] == "FAIL"] == ["example[u34]"]


@pytest.mark.parametrize("argv,needle", [
    (["matroid", "/nonexistent/m.json"], "cannot read"),
    (["suite", "--max-n", "12"], "suite cap"),
])
def test_input_errors_exit_2(argv, needle, capsys):
    code, _, err = _run(argv, capsys)
    assert code == 2 and needle in err


def test_malformed_inputs(files, capsys):
    bad = files("bad.json", '{"type": "uniform", "r": 2,\n "n": }')
    code, _, err = _run(["matroid", bad], capsys)
    assert code == 2 and "bad.json:2" in err
    notlattice = files("nl.json", {"n": 3, "flats": [[], [1], [2], [1, 2]]})
    assert _run(["matroid", notlattice], capsys)[0] == 2
    u = files("u.json", {"type": "uniform", "r": 2, "n": 3})
    code, _, err = _run(["filtered", u, "--omega", "1,x,2", "--t", "0"], capsys)
    assert code == 2 and "non-rational" in err
    code, _, err = _run(["filtered", u, "--omega", "1,-1,0", "--t", "-1"], capsys)
    assert code == 2


def test_module_entry_point(files):
    path = files("u23.json", {"type": "uniform", "r": 2, "n": 3})
    res = subprocess.run([sys.executable, "-m", "flatlattice", "matroid", path], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["command"] == "matroid"
