import json
from pathlib import Path

import pytest

from leibniz.cli import run

GOLDEN = Path(__file__).parent / "golden"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(out):
    return json.loads(out)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_check_mu2(capsys):
    code, out, _ = call(capsys, "check", "catalog:mu2")
    assert code == 0
    assert out == '{"right":true,"left":false,"symmetric":false,"lie":false}\n'


def test_series_and_kernel(capsys):
    code, out, _ = call(capsys, "series", "catalog:mu1")
    assert code == 0 and as_json(out) == {"lower_central": [2, 1, 0], "derived": [2, 1, 0],
                                          "nilpotent": True, "solvable": True}
    code, out, _ = call(capsys, "kernel", "catalog:mu1")
    assert as_json(out)["dim"] == 1


def test_cohomology_of_sl2(capsys):
    code, out, _ = call(capsys, "cohomology", "catalog:sl2", "--degree", "2")
    d = as_json(out)
    assert code == 0 and d["dim_hl"] == 0 and d["representatives"] == []


def test_metric_search_and_matrix(capsys, tmp_path):
    code, out, _ = call(capsys, "metric", "catalog:mu1")
    assert code == 0 and as_json(out)["metric"] is True
    good = write(tmp_path, "b.json", [[0, 1], [1, 0]])
    assert call(capsys, "metric", "catalog:mu1", "--matrix", good)[0] == 0
    bad = write(tmp_path, "c.json", {"matrix": [[1, 0], [0, 1]]})
    code, out, _ = call(capsys, "metric", "catalog:mu1", "--matrix", bad)
    assert code == 1 and as_json(out)["invariant"] is False


def test_algebra_file_formats(capsys, tmp_path):
    compact = write(tmp_path, "mu1.json", {"dim": 2, "brackets": {"1,1": "e2"}})
    code, out, _ = call(capsys, "check", compact)
    assert code == 0 and as_json(out)["symmetric"] is True


def test_cocycles_and_deform(capsys, tmp_path):
    phi = write(tmp_path, "phi.json", {"dim": 3, "values": {"2,2": "e2"}})
    code, out, _ = call(capsys, "cocycles", "catalog:lambda2", "--cocycle", phi)
    assert code == 0 and as_json(out) == {"cocycle": True}
    code, out, _ = call(capsys, "deform", "catalog:lambda2", "--cocycle", phi, "--order", "2", "--t0", "1")
    d = as_json(out)
    assert code == 0 and d["obstruction_order"] == 2 and d["metric"] is None
    assert d["coefficients"]["2"] == [{"triple": [2, 2, 2], "value": {"2": "1"}}]


def test_catalog_cocycles_report_discrepancies(capsys):
    code, out, _ = call(capsys, "cocycles", "catalog:diamond")
    assert code == 0 and [c["ok"] for c in as_json(out)["cocycles"]] == [True, True]
    code, out, _ = call(capsys, "cocycles", "catalog:W3tilde_star")
    assert code == 1


def test_iso_verb(capsys, tmp_path):
    m = write(tmp_path, "p.json", [["0", "1"], ["1", "0"]])
    code, out, _ = call(capsys, "iso", "catalog:mu1", "catalog:mu1", "--matrix", m)
    assert code == 1 and as_json(out)["mismatches"]
    ident = write(tmp_path, "id.json", [[1, 0], [0, 1]])
    code, out, _ = call(capsys, "iso", "catalog:mu1", "catalog:mu1", "--matrix", ident)
    assert code == 0 and as_json(out) == {"isomorphism": True, "mismatches": []}
    sing = write(tmp_path, "s.json", [[1, 1], [1, 1]])
    assert call(capsys, "iso", "catalog:mu1", "catalog:mu1", "--matrix", sing)[0] == 1


def test_catalog_list_and_show(capsys):
    code, out, _ = call(capsys, "catalog", "list", "--dim", "3", "--metric")
    assert code == 0 and as_json(out) == ["lambda2", "sl2"]
    code, out, _ = call(capsys, "catalog", "show", "mu1")
    assert as_json(out)["metric_form"] is not None


@pytest.mark.parametrize("dim", [4, 5])
def test_graph_dot_matches_golden(capsys, dim):
    code, out, _ = call(capsys, "graph", "--dim", str(dim), "--format", "dot")
    assert code == 0
    assert out == (GOLDEN / f"graph_dim{dim}.dot").read_text(encoding="utf-8")


def test_graph_json(capsys):
    code, out, _ = call(capsys, "graph", "--dim", "4")
    d = as_json(out)
    assert code == 0 and len(d["edges"]) == 5


@pytest.mark.parametrize("argv,needle", [
    (["check", "catalog:nope"], "unknown catalog id"),
    (["graph"], "--dim"),
    (["graph", "--dim", "9"], "--dim"),
    (["cohomology", "catalog:mu1", "--degree", "0"], "--degree"),
    (["scan", "catalog:mu1", "--grid", "huge"], "--grid"),
    (["deform", "catalog:mu1"], "--cocycle"),
    (["catalog", "show"], "id is required"),
])
def test_usage_errors_exit_2(capsys, argv, needle):
    code, out, err = call(capsys, *argv)
    assert code == 2 and out == "" and needle in err


def test_bad_files_name_the_field(capsys, tmp_path):
    missing = str(tmp_path / "absent.json")
    code, _, err = call(capsys, "check", missing)
    assert code == 2 and "cannot read file" in err
    broken = write(tmp_path, "broken.json", "{not json")
    code, _, err = call(capsys, "check", broken)
    assert code == 2 and "invalid JSON" in err
    ragged = write(tmp_path, "m.json", [[1, 0], [0]])
    code, _, err = call(capsys, "iso", "catalog:mu1", "catalog:mu1", "--matrix", ragged)
    assert code == 2 and "matrix[1]" in err
    wrong_dim = write(tmp_path, "f.json", {"dim": 2, "values": {"1,1": "e1"}})
    code, _, err = call(capsys, "cocycles", "catalog:lambda2", "--cocycle", wrong_dim)
    assert code == 2 and "cochain.dim" in err


def test_argparse_errors_exit_2(capsys):
    assert run(["frobnicate"]) == 2
    assert run(["--version"]) == 0
    capsys.readouterr()


def test_scan_verb(capsys):
    code, out, _ = call(capsys, "scan", "catalog:diamond")
    d = as_json(out)
    assert code == 0 and d["heuristic"] is True and d["hits"]
