"""Tests for Clifford frame tracking"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules.clifford_frame import CliffordFrame
from modules.exceptions import ValidationError
from modules.oracle_sim import ppr_matrix
from modules.pauli import PauliString, random_pauli


class TestCliffordFrame:
    """Test suite for CliffordFrame"""

    def setup_method(self):
        """Setup test fixtures"""
        self.rng = np.random.default_rng(5)

    def teardown_method(self):
        """Cleanup test fixtures"""
        self.rng = None

    def test_identity_lookup(self):
        """The identity frame returns the Pauli unchanged"""
        frame = CliffordFrame.identity(3)
        assert frame.is_identity()
        for label in ("+XYZ", "-IZI", "+iXX"):
            p = PauliString.from_label(label)
            assert frame.lookup(p) == p

    def test_single_qubit_update(self):
        """exp(iπ/4 Z) rewrites X̃ to Y and leaves Z̃ alone"""
        frame = CliffordFrame(1)
        frame.update(1, PauliString.from_label("+Z"))
        assert frame.x_row(0).label == "+Y"
        assert frame.z_row(0).label == "+Z"

        frame = CliffordFrame(1)
        frame.update(2, PauliString.from_label("+Z"))
        assert frame.x_row(0).label == "-X"

        frame = CliffordFrame(1)
        frame.update(0, PauliString.from_label("+Z"))
        assert frame.is_identity()

    def test_rows_match_dense_conjugation(self):
        """Rows equal W† Q W after a run of random corrections"""
        n = 3
        frame = CliffordFrame(n)
        w = np.eye(2 ** n, dtype=complex)
        for _ in range(25):
            k = int(self.rng.integers(0, 4))
            p = random_pauli(n, self.rng)
            frame.update(k, p)
            w = w @ ppr_matrix(p, k * np.pi / 4)

        identity = CliffordFrame(n)
        for i in range(2 * n):
            expected = w.conj().T @ identity.row(i).to_matrix() @ w
            assert np.allclose(frame.row(i).to_matrix(), expected, atol=1e-9)
        assert frame.is_valid()

        for _ in range(10):
            p = random_pauli(n, self.rng, hermitian=False)
            expected = w.conj().T @ p.to_matrix() @ w
            assert np.allclose(frame.lookup(p).to_matrix(), expected, atol=1e-9)

    def test_update_errors(self):
        """Bad powers, generators and widths are refused"""
        frame = CliffordFrame(2)
        with pytest.raises(ValidationError):
            frame.update(4, PauliString.from_label("+ZZ"))
        with pytest.raises(ValidationError):
            frame.update(1, PauliString.from_label("+iZZ"))
        with pytest.raises(ValidationError):
            frame.update(1, PauliString.from_label("+Z"))
        with pytest.raises(ValidationError):
            frame.lookup(PauliString.from_label("+X"))

    def test_word_ops_counted(self):
        """One parity per row plus one rewrite per anticommuting row"""
        frame = CliffordFrame(2)
        frame.update(1, PauliString.from_label("+ZI"))
        assert frame.word_ops == 4 + 1

    def test_from_rows_validation(self):
        """Non-symplectic tables are refused unless validation is off"""
        x = PauliString.from_label("+X")
        with pytest.raises(ValidationError):
            CliffordFrame.from_rows([x, x])
        frame = CliffordFrame.from_rows([x, x], validate=False)
        assert not frame.is_valid()
        with pytest.raises(ValidationError):
            CliffordFrame.from_rows([x])

    def test_from_table(self):
        """Bit tables load with their phases"""
        frame = CliffordFrame.from_table([[1, 0, 0], [0, 1, 0]])
        assert frame.is_identity()
        flipped = CliffordFrame.from_table([[1, 0, 2], [0, 1, 0]])
        assert flipped.x_row(0).label == "-X"
        assert "X~1" in flipped.format_table()

    def test_copy_is_independent(self):
        """Updating a copy leaves the original alone"""
        frame = CliffordFrame(2)
        clone = frame.copy()
        clone.update(1, PauliString.from_label("+XX"))
        assert frame.is_identity()
        assert not clone.is_identity()


def run_clifford_frame_tests():
    """Run all Clifford frame tests"""
    print("\n" + "=" * 60)
    print("🧪 Running Clifford Frame Tests")
    print("=" * 60)

    test_suite = TestCliffordFrame()
    tests = [
        ("Identity Lookup", test_suite.test_identity_lookup),
        ("Single-Qubit Update", test_suite.test_single_qubit_update),
        ("Dense Conjugation", test_suite.test_rows_match_dense_conjugation),
        ("Update Errors", test_suite.test_update_errors),
        ("Word Ops", test_suite.test_word_ops_counted),
        ("From Rows", test_suite.test_from_rows_validation),
        ("From Table", test_suite.test_from_table),
        ("Copy", test_suite.test_copy_is_independent),
    ]

    passed = 0
    failed = 0

    for test_name, test_func in tests:
        try:
            test_suite.setup_method()
            test_func()
            test_suite.teardown_method()
            print(f"✅ {test_name}")
            passed += 1
        except Exception as e:
            print(f"❌ {test_name}: {e}")
            failed += 1
            test_suite.teardown_method()

    print("\n" + "=" * 60)
    print(f"Results: {passed} passed, {failed} failed")
    print("=" * 60)

    return failed == 0


if __name__ == "__main__":
    success = run_clifford_frame_tests()
    sys.exit(0 if success else 1)
