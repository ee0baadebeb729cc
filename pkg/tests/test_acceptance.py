"""Acceptance gate: every criterion as one test, one printed line each.

The full campaign registry runs once (fixed seed, default parameter
ranges, which are the acceptance ranges); each criterion then asserts on
its campaigns' records.  Run with `pytest -s tests/test_acceptance.py` to
see the per-criterion lines.
"""

import pytest

from hypersplit.harness import REGISTRY, run_verification

SEED = 20260810


@pytest.fixture(scope="module")
def report():
    return run_verification({"seed": SEED})


def _by_id(report, case_id):
    for result in report.results:
        if result.case_id == case_id:
            return result
    raise AssertionError(f"campaign {case_id} missing from report")


def _criterion(report, number, label, case_ids, gating=True):
    results = [_by_id(report, cid) for cid in case_ids]
    ok = all(r.passed for r in results)
    records = sum(len(r.records) for r in results)
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number:>2} [{status}] {label} ({records} records)", flush=True)
    if gating:
        assert ok, f"criterion {number} failed: {label}"
    return ok


def test_criterion_01_splitting_finite_field(report):
    _criterion(report, 1, "order-n splitting, finite field, seeded draws", ["ff.split"])
    assert _by_id(report, "ff.split").elapsed < 300


def test_criterion_02_converse_vanishing(report):
    _criterion(
        report, 2, "vanishing at non-n-th powers, exhaustive small q",
        ["ff.split.converse", "g.split.converse"],
    )


def test_criterion_03_toolbox(report):
    _criterion(
        report, 3, "Gauss conjugation / product formula / orthogonality / gamma lemmas",
        [
            "toolbox.gauss-conj",
            "toolbox.hasse-davenport",
            "toolbox.orthogonality",
            "toolbox.gamma-reflection",
            "toolbox.gamma-product",
            "toolbox.digits",
        ],
    )


def test_criterion_04_two_routes_agree(report):
    result = _by_id(report, "g.overq")
    _criterion(report, 4, "defining sum vs root-set route, all lambda", ["g.overq"])
    qs = {rec.q_or_p for rec in result.records}
    assert {"9", "25", "49", "121", "169"} <= qs  # r = 2 fields included


def test_criterion_05_splitting_p_adic(report):
    _criterion(report, 5, "order-n splitting, p-adic, seeded lambdas", ["g.split"])


def test_criterion_06_order4_value_table(report):
    result = _by_id(report, "g4.at1")
    _criterion(report, 6, "order-4 unit values (-1 / 1+2x / 1-2x)", ["g4.at1"])
    assert len(result.records) == 10


def test_criterion_07_order6_value_table(report):
    _criterion(report, 7, "order-6 unit values (quadratic-form table)", ["g6.at1"])


def test_criterion_08_order4_modform(report):
    _criterion(report, 8, "order-4 unit value vs weight-2 eta coefficients", ["g4.modform"])


def test_criterion_09_order6_modform(report):
    _criterion(report, 9, "order-6 unit value vs weight-3 eta + curve traces", ["g6.modform"])


def test_criterion_10_curve_family(report):
    result = _by_id(report, "g3.curve")
    _criterion(report, 10, "order-3 values vs squared curve traces, eight fibers", ["g3.curve"])
    fibers = {rec.inputs.split()[0] for rec in result.records}
    assert len(fibers) == 8


def test_criterion_11_two_curve_identities(report):
    _criterion(report, 11, "order-6 two-curve identities + CM closed forms", ["g6.curvepairs"])


def test_criterion_12_trace_pairs(report):
    _criterion(
        report, 12, "curve-trace identities (order-2 and order-4 pairs)",
        ["g2.trace", "g4.tracepair", "g4.tracepair.eg"],
    )


def test_criterion_13_order8_calibrated(report):
    result = _by_id(report, "g8.at1")
    _criterion(report, 13, "order-8 value, calibrated weight-3 companion", ["g8.at1"])
    tags = {rec.inputs.split()[0] for rec in result.records if rec.inputs[0].isalpha()}
    assert "validation" in tags and "calibration" in tags


def test_criterion_14_ff_reductions(report):
    _criterion(report, 14, "finite-field reductions m2/m3", ["ff.reduce.m2", "ff.reduce.m3"])
    m4 = _by_id(report, "ff.reduce.m4")
    status = "PASS" if m4.passed else "FAIL"
    print(
        f"criterion 14b [{status}] order-8 reduction, report-only "
        f"({len(m4.records)} records, not gating)",
        flush=True,
    )
    assert not REGISTRY["ff.reduce.m4"].gating


def test_criterion_15_classical(report):
    _criterion(
        report, 15, "classical splitting grid + Gamma-quotient reductions",
        ["classical.split", "classical.reduce.m2", "classical.reduce.m3", "classical.reduce.m4"],
    )


def test_criterion_16_property_suites(report):
    ids = ["props.invariance", "props.pochhammer", "props.hermite", "props.hasse"]
    _criterion(report, 16, "invariance / product / floor / bound properties", ids)
    total = sum(len(_by_id(report, cid).records) for cid in ids)
    assert total >= 450
