"""Acceptance checks: one test (and one printed pass/fail line) per
criterion.  Every check is exact — zero numerical tolerance — and runs at
desk scale with the default randomized-instance counts."""

import pytest

from linloop.serialize import report_to_json
from linloop.suites import SUITES, SuiteConfig, run_suites

CFG = SuiteConfig(seed=42, d=2, window=16, points=3, s=3, instances=20)


@pytest.fixture(scope="module")
def reports():
    return {name: fn(CFG) for name, fn in SUITES.items()}


def _criterion(n: int, label: str, rows) -> None:
    failed = [r for r in rows if not r["pass"]]
    verdict = "PASS" if not failed else "FAIL"
    print(f"criterion {n} ({label}): {verdict} "
          f"[{len(rows) - len(failed)}/{len(rows)} checks]")
    assert not failed, f"criterion {n} ({label}) failed rows: {failed[:5]}"


def test_criterion_01_rotation_key_identities(reports):
    _criterion(1, "rotation isometry/coisometry and closed forms",
               reports["artkey"])


def test_criterion_02_stabilization(reports):
    _criterion(2, "stabilizing family endpoints, endomorphism, recovery",
               reports["stabilize"])


def test_criterion_03_linear_loop_involution(reports):
    _criterion(3, "involution calculus and loop recovery", reports["bott"])


def test_criterion_04_linearization_family(reports):
    _criterion(4, "pointed linearization family and endpoints",
               reports["linearize"])


def test_criterion_05_one_sided_stabilization(reports):
    _criterion(5, "one-sided product rule and symbol deformation",
               reports["toeplitz"])


def test_criterion_06_contractibility_steps(reports):
    _criterion(6, "contraction steps and the symbol section",
               reports["contract"])


def test_criterion_07_finite_linearization(reports):
    _criterion(7, "finite towers, endpoint boxes, and transport",
               reports["finite"])


def test_criterion_08_star_structure(reports):
    _criterion(8, "unitarity of the deformation families", reports["star"])


def test_criterion_09_polynomial_variant(reports):
    _criterion(9, "polynomial-coefficient rotation variant", reports["poly"])


def test_criterion_10_oracle_equivalence_and_determinism(reports):
    _criterion(10, "dense-oracle equivalence", reports["oracle-equiv"])
    first = report_to_json(run_suites(["bott", "stabilize"], CFG))
    second = report_to_json(run_suites(["bott", "stabilize"], CFG))
    assert first == second, "reports are not byte-identical across runs"
    print("criterion 10 (deterministic byte-identical reports): PASS")
