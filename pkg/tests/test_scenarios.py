from __future__ import annotations

import json

import pytest

from pliable.scenarios import (
    FAIL,
    PASS,
    ScenarioError,
    build_model,
    builtin_suites,
    parse_scenario,
    run_document,
    run_suite,
    run_text,
    serialize_scenario,
    suite_text,
    validate_document,
)

HEADER = """
[ring R]
vars = x0 x1 x2 x3
weights = 1 1 1 1

[lattice K]
basis = h e
gram = 4 0; 0 -2
"""


def scenario(body):
    return HEADER + body


def test_parse_sections_and_continuations():
    sf = parse_scenario("[check c]\nop = inner\nu = h +\n  e\n")
    [sec] = sf.of_kind("check")
    assert sec.get("u") == "h + e"


def test_unknown_section_kind_has_location():
    with pytest.raises(ScenarioError) as exc:
        parse_scenario("\n[widget w]\n", "f.scn")
    assert exc.value.line == 2 and exc.value.path == "f.scn"


def test_duplicate_names_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario("[ring R]\nvars = x\nweights = 1\n[ring R]\nvars = y\nweights = 1\n")


def test_key_outside_section_rejected():
    with pytest.raises(ScenarioError):
        parse_scenario("op = inner\n")


@pytest.mark.parametrize("name", builtin_suites())
def test_serialize_roundtrip(name):
    sf = parse_scenario(suite_text(name))
    again = parse_scenario(serialize_scenario(sf))
    assert again == sf
    assert serialize_scenario(again) == serialize_scenario(sf)


def test_undeclared_variable_is_located():
    text = scenario("\n[pair D]\nambient = R\ndivisor = x0^4 + z^4\n")
    with pytest.raises(ScenarioError) as exc:
        build_model(parse_scenario(text, "bad.scn"))
    assert (exc.value.line, exc.value.column) == (12, 18)
    assert "z" in str(exc.value)


def test_lint_anticanonical_mismatch():
    text = scenario("\n[pair D]\nambient = R\ndivisor = x0^3 + x1^3\n")
    model = build_model(parse_scenario(text), lenient=True)
    assert [d.kind for d in model.diagnostics] == ["anticanonical mismatch"]


def test_lint_grading_inconsistency():
    text = scenario("\n[map m]\nsource = R\ntarget = R\ncomponents = x0; x1^2; x2; x3\n")
    model = build_model(parse_scenario(text), lenient=True)
    assert "grading inconsistency" in [d.kind for d in model.diagnostics]


@pytest.mark.parametrize("name", builtin_suites())
def test_bundled_suites_lint_clean(name):
    assert build_model(parse_scenario(suite_text(name)), lenient=True).diagnostics == []


def test_derived_check_needs_oracle():
    text = scenario("\n[check c]\nop = inner\nlattice = K\nu = h\nv = h\nexpect = 4\n"
                    "provenance = DERIVED: computed\n")
    with pytest.raises(ScenarioError):
        run_text(text)


def test_provenance_tag_required():
    text = scenario("\n[check c]\nop = inner\nlattice = K\nu = h\nv = h\nexpect = 4\nprovenance = computed\n")
    with pytest.raises(ScenarioError):
        run_text(text)


def test_unknown_op_rejected():
    text = scenario("\n[check c]\nop = frobnicate\nprovenance = TRIVIAL: none\n")
    with pytest.raises(ScenarioError):
        run_text(text)


def test_pass_and_fail_records():
    text = scenario(
        "\n[check good]\nop = inner\nlattice = K\nu = h\nv = h\nexpect = 4\nprovenance = TRIVIAL: h^2\n"
        "\n[check bad]\nop = inner\nlattice = K\nu = e\nv = e\nexpect = 2\nprovenance = TRIVIAL: wrong on purpose\n")
    report = run_text(text)
    assert [r.id for r in report.records] == ["bad", "good"]
    assert report.record("good").status == PASS
    assert report.record("bad").status == FAIL
    assert report.record("bad").witness["value"] == -2
    assert not report.passed


def test_check_filter():
    report = run_suite("thmC_regions", checks=["diamond_points"])
    assert [r.id for r in report.records] == ["diamond_points"]


def test_reports_validate_and_are_deterministic():
    a = run_document([run_suite("thmC_regions", 1), run_suite("thmC_rr", 1)], 1)
    b = run_document([run_suite("thmC_regions", 1), run_suite("thmC_rr", 1)], 1)
    validate_document(a)
    strip = lambda d: [[(c["id"], c["status"], json.dumps(c["witness"], sort_keys=True))
                        for c in r["checks"]] for r in d["reports"]]
    assert strip(a) == strip(b)
    assert a["summary"]["passed"]


def test_unknown_suite():
    with pytest.raises(ScenarioError):
        run_suite("no_such_suite")
