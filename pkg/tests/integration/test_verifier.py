"""
Integration tests for the oracle-equivalence verifier
"""

import pytest

from config import get_config
from polyfunlab.verifier import SUITES, PolyfunVerifier


def test_psi_suite_passes():
    result = PolyfunVerifier(seed=1).run(["psi"], psi_max=6)
    assert result["valid"]
    assert result["errors"] == []
    assert list(result["suites"]) == ["psi"]
    assert result["suites"]["psi"]["checks"] > 0


def test_seed_defaults_to_config():
    verifier = PolyfunVerifier()
    assert verifier.seed == get_config().get_verification_config()["seed"]


def test_injected_fault_is_reported():
    verifier = PolyfunVerifier(inject_fault="psi")
    result = verifier.run(["psi", "null_count"], psi_max=4)
    assert not result["valid"]
    assert result["suites"]["psi"]["fault_injected"]
    assert result["suites"]["null_count"]["valid"]
    assert result["errors"][0].startswith("[psi] psi(90)")
    assert "injected fault" in result["errors"][0]


def test_fault_target_not_run_warns():
    result = PolyfunVerifier(inject_fault="group").run(["null_count"])
    assert result["valid"]
    assert any("group" in w for w in result["warnings"])


def test_unknown_suite_warns():
    result = PolyfunVerifier().run(["null_count", "bogus"])
    assert "Unknown suite 'bogus' ignored" in result["warnings"]


def test_seeded_runs_are_reproducible():
    first = PolyfunVerifier(seed=7).run(["decomposition", "canonical"], deco_samples=5)
    second = PolyfunVerifier(seed=7).run(["decomposition", "canonical"], deco_samples=5)
    assert first == second
    assert first["valid"]


def test_small_suites_pass():
    verifier = PolyfunVerifier()
    result = verifier.run(["identities", "voll", "group", "idempotents"], group_max=8, voll_samples=10)
    assert result["valid"], result["errors"]


def test_report_format():
    verifier = PolyfunVerifier(inject_fault="null_count")
    verifier.run(["null_count"])
    report = verifier.generate_report()
    assert "POLYFUNCTION VERIFICATION REPORT" in report
    assert "❌ INVALID" in report
    assert "ERRORS:" in report
    assert "null_count: ❌ INVALID" in report


@pytest.mark.slow
def test_every_suite_passes():
    result = PolyfunVerifier().run()
    assert list(result["suites"]) == list(SUITES)
    assert result["valid"], result["errors"]
