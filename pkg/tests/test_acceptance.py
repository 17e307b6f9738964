"""One test per acceptance criterion, each over seeds 0, 1 and 2.

Every comparison is exact (rational arithmetic, tolerance zero); sampled
atom instances are drawn per seed by the scenario runner.
"""
from __future__ import annotations

from fractions import Fraction

from conftest import SEEDS, acceptance_line

from pliable.scenarios import PASS, run_suite

TOLERANCE = 0  # exact equality everywhere


def run_checks(suite, checks=None):
    """Reports per seed; the ids that did not pass, tagged with the seed."""
    reports = {seed: run_suite(suite, seed, checks) for seed in SEEDS}
    bad = [f"{r.id}@{seed}" for seed, rep in reports.items() for r in rep.records if r.status != PASS]
    return reports, bad


def verdict(number, title, problems, n_checks):
    detail = f"seeds {','.join(map(str, SEEDS))}; {n_checks} checks; tolerance {TOLERANCE}"
    if problems:
        detail += "; failing: " + ", ".join(problems)
    assert acceptance_line(number, title, not problems, detail), problems


def test_01_strict_transforms():
    checks = ["sigma_quartic_to_F1", "eb_row3b_to_quartic", "phib_row4_to_row3b", "phib_row3b_to_row4",
              "psia_row5a_to_row3a", "psia_row3a_to_row5a"]
    reports, bad = run_checks("links_strict_transform", checks)
    for seed, rep in reports.items():
        sigma = rep.record("sigma_quartic_to_F1").witness["symbolic"]["removed"]
        if [(str(f), k) for f, k in sigma] != [("x", 2)]:
            bad.append(f"sigma multiplicity@{seed}")
        eb = rep.record("eb_row3b_to_quartic").witness["symbolic"]["removed"]
        if [(str(f), k) for f, k in eb] != [("x0", 1)]:
            bad.append(f"eb multiplicity@{seed}")
        samples = [k for k in rep.record("psia_row5a_to_row3a").witness if k.startswith("sample")]
        if len(samples) < 3:
            bad.append(f"fewer than 3 samples@{seed}")
    verdict(1, "strict transforms", bad, len(checks))


def test_02_compositions():
    reports, bad = run_checks("links_composition")
    ids = {r.id for r in reports[0].records}
    for want in ("chib_is_composite", "chia_is_composite", "tau_involution", "objects_5a_5b_equations"):
        if want not in ids:
            bad.append(f"missing {want}")
    _, more = run_checks("identities", ["objects_5a_5b"])
    verdict(2, "compositions and the 5a/5b substitution", bad + more, len(ids) + 1)


def test_03_volume_preservation():
    reports, bad = run_checks("links_volume_preserving")
    expected = {"sigma": -1, "nua": 1, "nub": 1, "ea": 1, "eb": 1, "chia": -1, "chib": -1}
    for seed, rep in reports.items():
        for name, lam in expected.items():
            w = rep.record(f"{name}_volume").witness
            if w["lambda"] != Fraction(lam) or w["chart_pairs"] < 2:
                bad.append(f"{name}_volume lambda@{seed}")
        for name in ("phia", "phib", "psia", "psib"):
            if rep.record(f"{name}_restricts").status != PASS:
                bad.append(f"{name}_restricts@{seed}")
    verdict(3, "volume preservation and birational restriction", bad, len(reports[0].records))


def test_04_bundle_lattice_classification():
    reports, bad = run_checks("thmB_lattice")
    for seed, rep in reports.items():
        w = rep.record("bundle_classification").witness
        if w["hits"] != [1] or w["rank_deficient"] != [8] or w["cases"] != 11:
            bad.append(f"bundle table@{seed}")
    verdict(4, "bundle lattice classification", bad, len(reports[0].records))


def test_05_integer_enumerations():
    reports, bad = run_checks("thmC_regions")
    want = {
        "diamond_points": [[a, b] for a in (-1, 0, 1) for b in (-1, 0, 1)],
        "ab_region_points": [[0, 0], [1, 0], [1, 1], [2, 0], [2, 1], [3, 1], [4, 2]],
        "no_common_integer_solution": [],
    }
    for seed, rep in reports.items():
        for cid, pts in want.items():
            if rep.record(cid).witness["points"] != pts:
                bad.append(f"{cid}@{seed}")
    verdict(5, "integer points of the regions", bad, len(reports[0].records))


def test_06_riemann_roch_table():
    reports, bad = run_checks("thmC_rr")
    want = {"case_1_1": (8, 4, (6, 6)), "case_2_1": (18, 12, (12, 12)), "case_2_2": (10, 10, (5, 6)),
            "case_4_4": (40, 40, (20, 21)), "case_3_4": (36, 30, (21, 21))}
    for seed, rep in reports.items():
        for cid, (dp, dk, h0) in want.items():
            w = rep.record(cid).witness
            if (w["degP"], w["degK"], tuple(w["h0"])) != (dp, dk, h0):
                bad.append(f"{cid}@{seed}")
    verdict(6, "Riemann-Roch table", bad, len(reports[0].records))


def test_07_toric_games():
    reports, bad = run_checks("thmC_toric_games")
    for seed, rep in reports.items():
        if rep.record("f7_flip_wall").witness["classification"] != "SmallModification(u1,u2)":
            bad.append(f"flip wall@{seed}")
        if rep.record("fphi_divisorial_wall").witness["classification"] != "DivisorialContraction(v)":
            bad.append(f"divisorial wall@{seed}")
    verdict(7, "toric chambers, irrelevant ideals and walls", bad, len(reports[0].records))


def test_08_singularities():
    reports, bad = run_checks("singularities")
    for seed, rep in reports.items():
        w = rep.record("a2_classify").witness
        types = [v["type"] for k, v in w.items() if k.startswith("sample")]
        if len(types) < 3 or set(types) != {"A2"}:
            bad.append(f"a2 samples@{seed}")
        if rep.record("rt_exhaustive_30").witness["mismatches"]:
            bad.append(f"age oracle@{seed}")
    verdict(8, "tangent cones, A_k types and the age criterion", bad, len(reports[0].records))


def test_09_pell_and_gq():
    reports, bad = run_checks("thmB_pell")
    for seed, rep in reports.items():
        for cid, fixed in (("pell_family_variant1", True), ("pell_family_variant2", False)):
            members = rep.record(cid).witness["members"]
            if len(members) < 5 or any(m["fixed"] is not fixed for m in members):
                bad.append(f"{cid}@{seed}")
    verdict(9, "Pell identity, G_Q components and self-map families", bad, len(reports[0].records))


def test_10_property_suites():
    reports, bad = run_checks("properties")
    for seed, rep in reports.items():
        for r in rep.records:
            if r.witness["instances"] < 100 or r.witness["failures"]:
                bad.append(f"{r.id}@{seed}")
    verdict(10, "randomised properties (>= 100 instances per seed)", bad, len(reports[0].records))
