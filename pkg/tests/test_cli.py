import json
import warnings
from pathlib import Path

import pytest

from edlab.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("d, n, ged, fed", [("1,1", "1,1", "6", "2"), ("2", "2", "13", "3"), ("1,1,1", "1,1,1", "34", "6")])
def test_gedeg(capsys, d, n, ged, fed):
    rep = run_json(capsys, "gedeg", "--d", d, "--n", n)
    assert rep["generic_ed_degree"] == ged and rep["frobenius_ed_degree"] == fed
    assert rep["command"] == "gedeg" and len(rep["inputs_digest"]) == 64
    assert rep["seed"] is None


def test_gedeg_dual_degree(capsys):
    assert run_json(capsys, "gedeg", "--d", "1,1", "--n", "1,1", "--e", "2")["dual_degree"] == "12"


def test_malformed_tuple_exits_2(capsys):
    code, _, err = run(capsys, "gedeg", "--d", "1,x", "--n", "1,1")
    assert code == 2 and "example: edlab gedeg" in err
    code, _, _ = run(capsys, "gedeg", "--d", "1", "--n", "1,1")
    assert code == 2


def test_tables_csv_is_golden(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0 and out == (GOLDEN / "tables.csv").read_text()


def test_tables_other_formats(capsys):
    _, md, _ = run(capsys, "tables", "--format", "markdown", "--max-k", "3", "--max-n", "3")
    assert "39 (3)" in md and "| 1 |" in md
    rep = run_json(capsys, "tables", "--format", "json", "--max-k", "2", "--max-n", "2")
    assert rep["table1"][1] == {"k": 2, "generic_ed_degree": "6", "frobenius_ed_degree": "2"}
    assert [(r["n1"], r["n2"]) for r in rep["table2"]] == [(1, 1), (1, 2), (2, 2)]


def test_quadric(capsys):
    f = '[[0,0,0,"1/2"],[0,0,"-1/2",0],[0,"-1/2",0,0],["1/2",0,0,0]]'
    rep = run_json(capsys, "quadric", "--f", f, "--q", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]")
    assert rep["ed_degree"] == 2
    code, _, err = run(capsys, "quadric", "--f", f, "--q", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,-1]]")
    assert code == 3 and "domain error" in err


def test_rnc(capsys):
    rep = run_json(capsys, "rnc", "--d", "2", "--q", "[[1,0,0],[0,2,0],[0,0,1]]")
    assert rep["ed_degree"] == 2 and rep["defect"] == 2
    rep = run_json(capsys, "rnc", "--d", "2", "--q", '{"Q": [[1,0,0],[0,1,0],[0,0,1]]}')
    assert rep["ed_degree"] == 4


def test_exact_commands_reject_floats(capsys):
    code, _, err = run(capsys, "rnc", "--d", "2", "--q", "[[1.0,0,0],[0,2,0],[0,0,1]]")
    assert code == 2 and "example" in err
    code, _, _ = run(capsys, "edpoly", "--d", "2", "--u", "[0.5,2,3]", "--q", "[[1,0,0],[0,2,0],[0,0,1]]")
    assert code == 2


def test_edpoly(capsys):
    rep = run_json(capsys, "edpoly", "--d", "2", "--u", '[1,2,"3/2"]', "--q", "[[1,0,0],[0,1,0],[0,0,1]]")
    assert rep["degree"] == 4 and len(rep["coefficients"]) == 5
    assert all(isinstance(r, float) for r in rep["real_roots"])


def test_critpoints(capsys):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rep = run_json(capsys, "critpoints", "matrix", "--u", "[[3,0],[0,1]]", "--q", "frobenius", "--seed", "1")
        assert rep["count"] == 2 and rep["census"]["m"] == [2, 4, 2]
        assert rep["seed"] == 1 and all(c["passed"] for c in rep["checks"])
        rep = run_json(capsys, "critpoints", "symmetric", "--u", "[[2,1],[1,-1]]", "--q", "frobenius")
        assert rep["count"] == 2 and "y" not in rep["points"][0]


def test_reruns_are_byte_identical(capsys):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        argv = ["critpoints", "matrix", "--u", "[[1,2,0],[0,1,3]]", "--q", "frobenius", "--seed", "3"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
    assert a == b
    _, a, _ = run(capsys, "rnc", "--d", "3", "--q", "[[1,0,0,0],[0,3,0,0],[0,0,3,0],[0,0,0,1]]")
    _, b, _ = run(capsys, "rnc", "--d", "3", "--q", "[[1,0,0,0],[0,3,0,0],[0,0,3,0],[0,0,0,1]]")
    assert a == b


def test_file_arguments(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"Q": [[1, 0, 0], [0, 2, 0], [0, 0, 1]]}))
    assert run_json(capsys, "rnc", "--d", "2", "--q", str(path))["ed_degree"] == 2
    code, _, err = run(capsys, "rnc", "--d", "2", "--q", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err


def test_bad_tolerance(capsys):
    code, _, _ = run(capsys, "critpoints", "matrix", "--u", "[[1,0],[0,2]]", "--q", "frobenius", "--tol", "bogus=1")
    assert code == 2


def test_verify_formulas(capsys):
    code, out, _ = run(capsys, "verify", "formulas")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 6 and all(l.startswith("PASS") for l in lines)
