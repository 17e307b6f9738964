from __future__ import annotations

import json
import re
import subprocess
import sys

import pytest

from pliable.cli import main
from pliable.scenarios import validate_document

GOOD = """
[lattice K]
basis = h e
gram = 4 0; 0 -2

[check h_squared]
op = inner
lattice = K
u = h
v = h
expect = 4
provenance = TRIVIAL: self-intersection of h
"""

FAILING = GOOD + """
[check e_squared]
op = inner
lattice = K
u = e
v = e
expect = 5
provenance = TRIVIAL: deliberately wrong
"""

UNDECLARED = """
[ring R]
vars = x0 x1 x2 x3
weights = 1 1 1 1

[pair D]
ambient = R
divisor = x0^4 + w^4
"""

MISMATCH = """
[ring R]
vars = x0 x1 x2 x3
weights = 1 1 1 1

[pair D]
ambient = R
divisor = x0^3 + x1^3

[map m]
source = R
target = R
components = x0; x1^2; x2; x3
"""


@pytest.fixture
def scn(tmp_path):
    def write(text, name="s.scn"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_pass_exit_zero(capsys, scn):
    code, out, _ = run(capsys, "run", scn(GOOD))
    assert code == 0 and "PASS" in out


def test_run_failure_exit_one(capsys, scn):
    code, out, _ = run(capsys, "run", scn(FAILING))
    assert code == 1 and "FAIL" in out


def test_undeclared_variable_exit_two(capsys, scn):
    path = scn(UNDECLARED)
    code, out, err = run(capsys, "run", path)
    assert code == 2 and out == ""
    assert re.search(r"s\.scn:8:\d+: unknown identifier 'w'", err)


def test_missing_file_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "run", str(tmp_path / "absent.scn"))
    assert code == 2 and "error" in err


def test_text_and_json_agree(capsys, scn):
    path = scn(FAILING)
    _, text, _ = run(capsys, "run", path, "--seed", "3")
    code, raw, _ = run(capsys, "run", path, "--seed", "3", "--json")
    doc = json.loads(raw)
    validate_document(doc)
    assert code == 1 and doc["seed"] == 3
    from_json = {c["id"]: c["status"].upper() for r in doc["reports"] for c in r["checks"]}
    from_text = {m.group(2): m.group(1) for m in re.finditer(r"^\s+(PASS|FAIL|INDETERMINATE)\s+(\S+)", text, re.M)}
    assert from_json == from_text == {"e_squared": "FAIL", "h_squared": "PASS"}


def test_run_bundled_suite_with_check_filter(capsys):
    code, raw, _ = run(capsys, "run", "--suite", "links_composition", "--check", "chib_is_composite", "--json")
    doc = json.loads(raw)
    assert code == 0
    assert [c["id"] for c in doc["reports"][0]["checks"]] == ["chib_is_composite"]


def test_repeated_suite_flag(capsys):
    code, raw, _ = run(capsys, "run", "--suite", "thmC_regions", "--suite", "thmC_rr", "--json")
    doc = json.loads(raw)
    assert code == 0 and [r["suite"] for r in doc["reports"]] == ["thmC_regions", "thmC_rr"]


def test_unknown_suite_exit_two(capsys):
    code, _, err = run(capsys, "run", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_lint_reports_diagnostics(capsys, scn):
    code, out, _ = run(capsys, "lint", scn(MISMATCH))
    assert code == 1
    assert "anticanonical mismatch" in out and "grading inconsistency" in out


def test_lint_bundled_clean(capsys):
    code, out, _ = run(capsys, "lint", "--suite", "table1_wellformed")
    assert code == 0 and out.startswith("0 diagnostic")


def test_suites_lists_bundled(capsys):
    code, out, _ = run(capsys, "suites")
    assert code == 0 and "links_composition" in out and "thmC_toric_games" in out


def test_chambers_divisorial_wall(capsys):
    code, out, _ = run(capsys, "chambers", "1 1 1 2 0 -2 / 0 0 0 0 1 1", "--vars", "x0 x1 x2 x3 u v")
    assert code == 0
    assert "2 chamber(s)" in out
    assert "wall (0,1) -> chamber 2: DivisorialContraction(v)" in out


def test_chambers_single(capsys):
    code, out, _ = run(capsys, "chambers", "1 1 1 1", "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["chambers"]) == 1
    assert doc["chambers"][0]["walls"][0]["kind"] == "Fibration"


def test_chambers_flip(capsys):
    code, out, _ = run(capsys, "chambers", "1 1 1 2 0 -1 -2 / 0 0 0 0 1 1 1", "--vars", "x0 x1 x2 y u0 u1 u2")
    assert code == 0 and "SmallModification(u1,u2)" in out


def test_chambers_rank_three_exit_two(capsys):
    code, _, err = run(capsys, "chambers", "1 0 0 / 0 1 0 / 0 0 1")
    assert code == 2 and "rank" in err


def test_lattice_queries(capsys):
    code, out, _ = run(capsys, "lattice", "4 0; 0 -2", "--names", "h e", "--classes", "h; e", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["det"] == -8 and doc["class_det"] == -8
    code, out, _ = run(capsys, "lattice", "a2_quartic", "--inner", "e0", "e1")
    assert code == 0 and "= 1" in out


def test_lattice_bundles(capsys):
    code, out, _ = run(capsys, "lattice", "--bundles", "--json")
    rows = json.loads(out)["bundles"]
    assert [r["case"] for r in rows if r["det"] == -8] == [1]


def test_lattice_bad_input_exit_two(capsys):
    code, _, _ = run(capsys, "lattice", "1 2; 3 1")
    assert code == 2


def test_console_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pliable.cli", "suites"], capture_output=True, text=True)
    assert proc.returncode == 0 and "identities" in proc.stdout


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--seed", "abc"])
    assert exc.value.code == 2
