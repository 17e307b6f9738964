"""Run scenario checks and collect reports."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources

from .checks import FAIL, INDETERMINATE, PASS, CheckContext, jsonable, run_op
from .format import ScenarioError, load_scenario, parse_scenario
from .model import build_model


@dataclass
class CheckRecord:
    id: str
    op: str
    status: str
    witness: dict
    provenance: str
    micros: int

    def as_dict(self):
        return {
            "id": self.id,
            "op": self.op,
            "status": self.status,
            "witness": jsonable(self.witness),
            "provenance": self.provenance,
            "micros": self.micros,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    records: list = field(default_factory=list)
    path: str | None = None

    @property
    def counts(self):
        out = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def passed(self):
        return all(r.status == PASS for r in self.records)

    def record(self, check_id):
        for r in self.records:
            if r.id == check_id:
                return r
        raise KeyError(check_id)

    def as_dict(self):
        counts = self.counts
        return {
            "suite": self.suite,
            "path": self.path,
            "seed": self.seed,
            "checks": [r.as_dict() for r in self.records],
            "summary": {**counts, "total": len(self.records), "passed": self.passed},
        }

    def text(self):
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for r in self.records:
            lines.append(f"  {r.status.upper():<13} {r.id:<36} {r.op:<24} [{r.provenance.split(':', 1)[0]}] {r.micros / 1000:.1f} ms")
        c = self.counts
        lines.append(f"  {c[PASS]} pass, {c[FAIL]} fail, {c[INDETERMINATE]} indeterminate")
        return "\n".join(lines)


_ERRORS = (ValueError, ArithmeticError, KeyError)


def run_check(model, sec, seed):
    """Run one ``[check ...]`` section; library errors become a failing record."""
    name = sec.require("op")
    prov = sec.require("provenance")
    ctx = CheckContext(model, sec, seed, sec.get("oracle"))
    start = time.perf_counter()
    try:
        outcome = run_op(ctx, name)
        status, witness = outcome.status, outcome.witness
    except ScenarioError:
        raise
    except _ERRORS as exc:
        status, witness = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
    micros = int((time.perf_counter() - start) * 1e6)
    return CheckRecord(sec.name, name, status, witness, prov, micros)


def run_model(model, seed=0, checks=None, suite=None):
    """All checks of a built model (or those whose id is in ``checks``), ordered by id."""
    if model.diagnostics:
        first = model.diagnostics[0]
        raise ScenarioError(f"{first.section}: {first.kind}: {first.message}", first.line, first.column, first.path)
    name = suite or (model.source.suite.name if model.source.suite else "scenario")
    report = SuiteReport(name, seed, path=model.source.path)
    wanted = set(checks) if checks else None
    for sec in model.checks:
        if wanted is not None and sec.name not in wanted:
            continue
        report.records.append(run_check(model, sec, seed))
    report.records.sort(key=lambda r: r.id)
    return report


def run_file(path, seed=0, checks=None):
    return run_model(build_model(load_scenario(path)), seed, checks)


def run_text(text, seed=0, checks=None, path=None):
    return run_model(build_model(parse_scenario(text, path)), seed, checks)


# bundled suites -----------------------------------------------------------------


def _data():
    return resources.files("pliable") / "data"


def builtin_suites():
    """Names of the bundled suites (file stems of the shipped scenario files)."""
    return sorted(p.name[:-4] for p in _data().iterdir() if p.name.endswith(".scn"))


def suite_text(name):
    if name not in builtin_suites():
        raise ScenarioError(f"unknown suite '{name}' (known: {', '.join(builtin_suites())})")
    return (_data() / f"{name}.scn").read_text(encoding="utf-8")


def suite_path(name):
    suite_text(name)
    return str(_data() / f"{name}.scn")


def run_suite(name, seed=0, checks=None):
    return run_text(suite_text(name), seed, checks, path=f"{name}.scn")


def report_schema():
    return json.loads((_data() / "report_schema.json").read_text(encoding="utf-8"))


def run_document(reports, seed):
    """The structured output of one CLI run."""
    total = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
    for r in reports:
        for k, v in r.counts.items():
            total[k] += v
    return {
        "seed": seed,
        "reports": [r.as_dict() for r in reports],
        "summary": {**total, "total": sum(total.values()), "passed": all(r.passed for r in reports)},
    }


def validate_document(doc):
    import jsonschema

    jsonschema.validate(doc, report_schema())
