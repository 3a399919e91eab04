import io
import json
import subprocess
import sys

import pytest

from bzquilt.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text else None), text


def test_generators():
    code, out, _ = call("generators", "--tree", "((1,2),(3,4))")
    assert code == 0 and out["count"] == 22 and len(out["generators"]) == 22


def test_multiplicity_examples():
    code, out, _ = call("multiplicity", "--tree", "(1,2,3)", "--weights", "1,0;1,0;1,0")
    assert code == 0 and (out["count"], out["oracle"], out["agree"]) == (1, 1, True)
    code, out, _ = call("multiplicity", "--tree", "(1,2,3)", "--weights", "1,0;0,0;0,0")
    assert code == 0 and (out["count"], out["oracle"], out["agree"]) == (0, 0, True)
    code, out, _ = call("multiplicity", "--tree", "((1,2),(3,4))", "--weights", "1,1;1,1;1,1;1,1")
    assert out["count"] == out["oracle"] == 8


def test_multiplicity_weight_count_mismatch():
    code, out, _ = call("multiplicity", "--tree", "(1,2,3)", "--weights", "1,0;1,0")
    assert code == 2 and out is None


def test_hilbert():
    code, out, _ = call("hilbert", "--tree", "(1,2,3)")
    assert code == 0 and out["count"] == 8 and out["complete"]


def test_verify_presentation_exit_codes():
    code, out, _ = call("verify-presentation", "--tree", "(1,2,3)", "--degree-bound", "4")
    assert code == 0 and out["passed"]
    code, out, _ = call("verify-presentation", "--tree", "(1,2,3)", "--degree-bound", "3", "--without", "cubics")
    assert code == 1 and out["failures"]
    code, _, _ = call("verify-presentation", "--tree", "(1,2,3)", "--degree-bound", "2")
    assert code == 2


def test_pface():
    code, out, _ = call("pface", "--n", "6")
    assert code == 0 and out["count"] == 20
    code, out, _ = call("pface", "--tree", "(1,2,3)")
    assert out["count"] == 1


def test_gt_compare():
    code, out, _ = call("gt-compare", "--n", "5", "--degree-bound", "3")
    assert code == 0 and out["passed"]
    assert [r["face"] for r in out["hilbert_function"]["rows"]] == [1, 10, 50, 175]
    assert call("gt-compare", "--n", "3")[0] == 2


def test_counterexample():
    code, out, _ = call("counterexample", "--m", "4")
    assert code == 0 and out["found"]
    fundamental = {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert any(tuple(b) not in fundamental for b in out["generator"]["boundary"])
    code, out, _ = call("counterexample", "--m", "3", "--degree-bound", "4")
    assert code == 1 and not out["found"]


@pytest.mark.parametrize(
    "argv",
    [
        ["generators"],
        ["generators", "--tree", "((1,2),3,4,5)"],
        ["generators", "--tree", "(1,2,3)", "--bogus"],
        ["nonsense"],
        [],
        ["multiplicity", "--tree", "(1,2,3)"],
        ["multiplicity", "--tree", "(1,2,3)", "--weights", "1,x;1,0;1,0"],
        ["counterexample", "--m", "2"],
        ["verify-presentation", "--tree", "(1,2,3)", "--threads", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_determinism_and_indent(tmp_path):
    a = call("generators", "--tree", "((1,2),(3,4))", "--threads", "1")[2]
    b = call("generators", "--tree", "((1,2),(3,4))", "--threads", "4")[2]
    assert a == b
    path = tmp_path / "out.json"
    _, _, text = call("pface", "--n", "4", "--json-indent", "2", "--output", str(path))
    assert text.startswith("{\n  ")
    assert path.read_text() == text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bzquilt", "multiplicity", "--tree", "(1,2,3)", "--weights", "1,1;1,1;1,1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 2
