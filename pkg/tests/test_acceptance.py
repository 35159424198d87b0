"""One test per acceptance criterion, each printing a PASS/FAIL line.

Everything runs on the full suite (uniform and Boolean matroids up to
n = 7, M(K4) and Fano) with the default seed.  Criterion 13 reproduces a
worked example whose recorded claim does not hold; its test computes the
verdict faithfully and is marked as an expected failure.
"""

import pytest

from flatlattice import checks
from flatlattice import hodge
from flatlattice import matroid as mt
from flatlattice.bergman import Halfspace
from flatlattice.linalg import TALLY

from conftest import CRITERIA

CFG = checks.SuiteConfig(seed=0, max_n=7)
ALEXANDER_MAX_N = 8


def _report(k, records, extra=""):
    ok = bool(records) and all(r.passed for r in records)
    bad = [r.name for r in records if not r.passed]
    text = f"{len(records)} record{'' if len(records) == 1 else 's'}" + (f", failing: {', '.join(bad)}" if bad else "") + (f"; {extra}" if extra else "")
    CRITERIA[k] = ("PASS" if ok else "FAIL", text)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
    return ok, bad


@pytest.fixture(scope="module")
def examples():
    return {r.name: r for r in checks.worked_examples()}


def test_suite_composition():
    names = [n for n, _ in checks.suite_matroids(CFG.max_n)]
    assert {"B7", "U2,7", "U6,7", "K4", "Fano"} <= set(names)
    assert len(names) == 21 + 2


def test_criterion_01_filtered_lattice_cm():
    recs = checks.check_filtered_cm(CFG)
    assert CFG.weights >= 20
    ok, bad = _report(1, recs, f"{CFG.weights} weights per matroid")
    assert ok, bad


def test_criterion_02_boolean_shelling():
    recs = checks.check_boolean_shelling(CFG)
    cases = sum(r.data["cases"] for r in recs)
    assert cases >= 50
    ok, bad = _report(2, recs, f"{cases} (omega, t) cases")
    assert ok, bad


def test_criterion_03_rota(examples):
    recs = checks.check_rota(CFG) + [examples["example[rota]"]]
    ok, bad = _report(3, recs)
    assert ok, bad


def test_criterion_04_relative_lefschetz():
    recs = checks.check_relative_lefschetz(CFG)
    ok, bad = _report(4, recs, f"{CFG.sweeps} sweeps per matroid")
    assert ok, bad


def test_criterion_05_complement_model(examples):
    recs = checks.check_complement_model(CFG) + [examples["example[salvetti_bound]"],
                                                examples["example[duality_identification]"]]
    ok, bad = _report(5, recs)
    assert ok, bad


def test_criterion_06_alexander_duality():
    recs = checks.check_alexander_duality(checks.SuiteConfig(seed=0, max_n=ALEXANDER_MAX_N))
    ok, bad = _report(6, recs, f"n <= {ALEXANDER_MAX_N}")
    assert ok, bad


def test_criterion_07_balancing():
    recs = checks.check_balancing(CFG)
    ok, bad = _report(7, recs)
    assert ok, bad


def test_criterion_08_seven_point_example(examples):
    rec = examples["example[seven_point]"]
    d = rec.data["computed"]
    assert d["elements"] == ["{1}", "{2}", "{6}", "{7}", "{1,2}", "{6,7}"]
    assert d["components"] == 2
    assert d["reduced_homology"] == {"0": {"betti": 1, "torsion": []}}
    assert d["cm_verdict"] == "FAIL"
    ok, bad = _report(8, [rec])
    assert ok, bad


def test_criterion_09_fano_integral_defect(examples):
    rec = examples["example[fano_torsion]"]
    d = rec.data["computed"]
    assert d["whole_p_group_full"] and d["whole_p_group_rank"] == 6
    assert d["index"] == 2
    assert d["theta_even_on_all_generating_flats"] and d["theta_on_element_4"] == 1
    rational = hodge.halfspace_p_comparison(mt.fano(), Halfspace.from_weight(hodge.FANO_OMEGA), 1, "Q")
    assert rational.index == 1
    ok, bad = _report(9, [rec], "index 2 over Z, 1 over Q")
    assert ok, bad


def test_criterion_10_rational_framing():
    recs = checks.check_rational_framing(CFG)
    assert CFG.halfspaces >= 20
    ok, bad = _report(10, recs, f"{CFG.halfspaces} halfspaces per matroid")
    assert ok, bad


def test_criterion_11_halflink_vanishing():
    recs = checks.check_halflink_vanishing(CFG)
    pairs = sum(r.data["pairs_checked"] for r in recs)
    ok, bad = _report(11, recs, f"{pairs} (p, q) groups checked")
    assert ok, bad


def test_criterion_12_cone_isomorphism():
    recs = checks.check_cone_iso(CFG)
    ok, bad = _report(12, recs)
    assert ok, bad


@pytest.mark.xfail(strict=True, reason="the chain c is a boundary in the halflink, so [c] = 0")
def test_criterion_13_u34_witness(examples):
    rec = examples["example[u34]"]
    d = rec.data["computed"]
    ok, bad = _report(13, [rec], f"system consistent: {d['system_consistent']}, "
                                 f"chain is a boundary over Z: {d['chain_is_boundary_Z']}")
    assert d["system_consistent"] is False
    assert ok, rec.data["mismatches"]


def test_criterion_14_infrastructure():
    recs = checks.check_infrastructure(CFG)
    cert = next(r for r in recs if r.name == "certificates")
    assert TALLY["square_zero"] > 0 and TALLY["snf_certificates"] > 0 and TALLY["hnf_certificates"] > 0
    ok, bad = _report(14, recs, f"{cert.data['chain_complexes_checked']} chain complexes, "
                                f"{cert.data['snf_certificates']} SNF and {cert.data['hnf_certificates']} HNF "
                                f"certificates")
    assert ok, bad
