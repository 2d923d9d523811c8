"""End-to-end acceptance checks against the stored reference targets.

Every criterion runs at its stated tolerance and prints one PASS/FAIL line
(plus per-quantity details), so `pytest -s tests/test_acceptance.py` doubles
as the reproduction report. The full set takes tens of minutes; the runs are
shared across criteria through a session-scoped suite object.
"""

import pytest

from mpfv.suite import BenchmarkSuite


@pytest.fixture(scope="session")
def suite():
    return BenchmarkSuite(verbose=False)


def report(result):
    print()
    for line in result.lines:
        print("   ", line)
    print("ACCEPTANCE", result.summary())
    assert result.passed, "\n".join([result.summary()] + result.lines)


def test_criterion_1_fv2_limited_convergence(suite):
    report(suite.criterion_fv2_limited_convergence())


def test_criterion_2_nk_order_collapse(suite):
    report(suite.criterion_nk_order_collapse())


def test_criterion_3_fv4_unlimited_orders(suite):
    report(suite.criterion_fv4_unlimited_orders())


def test_criterion_4_sbr_error_table(suite):
    report(suite.criterion_sbr_metadata())


def test_criterion_5_maximum_principles(suite):
    report(suite.criterion_maximum_principles())


def test_criterion_6_dominance(suite):
    report(suite.criterion_dominance())


def test_criterion_7_structural_identities(suite):
    report(suite.criterion_structural())


def test_criterion_8_sign_preservation(suite):
    report(suite.criterion_sign_preservation())
