"""Scenario files, check registry and bundled suites."""
from __future__ import annotations

from .checks import FAIL, INDETERMINATE, OPS, PASS, Outcome, op
from .format import (
    Entry,
    ScenarioError,
    ScenarioFile,
    Section,
    load_scenario,
    parse_scenario,
    serialize_scenario,
)
from .model import Diagnostic, Model, build_model
from .runner import (
    CheckRecord,
    SuiteReport,
    builtin_suites,
    report_schema,
    run_document,
    run_file,
    run_model,
    run_suite,
    run_text,
    suite_path,
    suite_text,
    validate_document,
)

__all__ = [
    "CheckRecord", "Diagnostic", "Entry", "FAIL", "INDETERMINATE", "Model", "OPS", "Outcome", "PASS",
    "ScenarioError", "ScenarioFile", "Section", "SuiteReport", "build_model", "builtin_suites",
    "load_scenario", "op", "parse_scenario", "report_schema", "run_document", "run_file", "run_model",
    "run_suite", "run_text", "serialize_scenario", "suite_path", "suite_text", "validate_document",
]
