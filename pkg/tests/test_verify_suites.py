"""Tests for the dense-oracle verification suites"""

import sys
from pathlib import Path

import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules import verify_suites as vs
from modules.exceptions import ValidationError


class TestVerifySuites:
    """Small-sample runs of each suite"""

    def test_gizens_suite_passes(self):
        """Tree and ladder circuits pass for small sizes"""
        result = vs.gizens_suite(seed=1, samples=5, sizes=(2, 4))
        assert result.suite == "gizens"
        assert result.passed, vs.format_results([result])
        assert len(result.checks) == 14

    def test_ppm_suite_passes(self):
        """PPM circuits, frame and streams pass on a short run"""
        result = vs.ppm_suite(seed=1, samples=2, shots=2, frame_pairs=20, programs=1)
        assert result.passed, vs.format_results([result])

    def test_factorizer_suite_passes(self):
        """Synthetic tensors round-trip and respect the bound"""
        result = vs.factorizer_suite(seed=1, samples=3, max_orbitals=4)
        assert result.passed, vs.format_results([result])

    def test_run_suites_dispatch(self):
        """Options a suite does not accept are dropped"""
        results = vs.run_suites("factorizer", seed=3, samples=2, max_orbitals=3, shots=7)
        assert [r.suite for r in results] == ["factorizer"]
        assert results[0].seed == 3
        with pytest.raises(ValidationError, match="unknown suite"):
            vs.run_suites("everything")

    def test_failure_reporting(self):
        """Failed checks show up as FAIL lines with residuals"""
        result = vs.SuiteResult("demo", 9)
        result.add("small residual", 1e-14, 1e-12)
        result.add("large residual", 0.5, 1e-12)
        result.expect("flag", False, "2 mismatched shots")
        assert not result.passed
        assert [c.name for c in result.failures] == ["large residual", "flag"]
        text = vs.format_results([result])
        assert text.splitlines()[0] == "❌ demo (seed 9)"
        assert "✅ PASS: small residual" in text
        assert "❌ FAIL: large residual  residual 5.000e-01" in text
        assert "(2 mismatched shots)" in text


def run_verify_suites_tests():
    """Run all verification suite tests"""
    print("\n" + "=" * 60)
    print("🧪 Running Verification Suite Tests")
    print("=" * 60)

    test_suite = TestVerifySuites()
    tests = [
        ("Gizens Suite", test_suite.test_gizens_suite_passes),
        ("PPM Suite", test_suite.test_ppm_suite_passes),
        ("Factorizer Suite", test_suite.test_factorizer_suite_passes),
        ("Suite Dispatch", test_suite.test_run_suites_dispatch),
        ("Failure Reporting", test_suite.test_failure_reporting),
    ]

    passed = 0
    failed = 0

    for test_name, test_func in tests:
        try:
            test_func()
            print(f"✅ {test_name}")
            passed += 1
        except Exception as e:
            print(f"❌ {test_name}: {e}")
            failed += 1

    print("\n" + "=" * 60)
    print(f"Results: {passed} passed, {failed} failed")
    print("=" * 60)

    return failed == 0


if __name__ == "__main__":
    success = run_verify_suites_tests()
    sys.exit(0 if success else 1)
