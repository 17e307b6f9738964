from __future__ import annotations

import pytest

from pliable.algebra import GradedRing
from pliable.scenarios import build_model, parse_scenario, suite_text

SEEDS = (0, 1, 2)


@pytest.fixture(scope="session")
def p3():
    return GradedRing.make(["x0", "x1", "x2", "x3"], [[1, 1, 1, 1]],
                           [("B", ("x0", "x1", "x2"), 3), ("C", ("x0", "x1", "x2"), 4)])


@pytest.fixture(scope="session")
def plain3():
    return GradedRing.make(["x", "y", "z"], [[1, 1, 1]])


_MODELS = {}


def suite_model(name):
    """Built model of a bundled suite, cached across tests."""
    if name not in _MODELS:
        _MODELS[name] = build_model(parse_scenario(suite_text(name), f"{name}.scn"))
    return _MODELS[name]


@pytest.fixture(scope="session")
def links():
    return suite_model("links_volume_preserving")


ACCEPTANCE_LINES = []


def acceptance_line(number, title, ok, detail):
    """Record (and print) one verdict line for an acceptance criterion."""
    line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
