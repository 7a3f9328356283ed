"""Tests for symplectic Pauli strings"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules.exceptions import ValidationError
from modules.pauli import PauliString, all_paulis, majorana_pauli, random_pauli


class TestPauliString:
    """Test suite for PauliString"""

    def setup_method(self):
        """Setup test fixtures"""
        self.rng = np.random.default_rng(7)

    def teardown_method(self):
        """Cleanup test fixtures"""
        self.rng = None

    def test_label_parsing(self):
        """Labels keep their sign prefix"""
        for label in ("+XIZY", "-ZZ", "+iXY", "-iZ"):
            assert PauliString.from_label(label).label == label
        assert PauliString.from_label("XZ").label == "+XZ"

    def test_bad_labels_rejected(self):
        """Unknown letters and empty bodies raise"""
        with pytest.raises(ValidationError):
            PauliString.from_label("+XQ")
        with pytest.raises(ValidationError):
            PauliString.from_label("-")

    def test_products_track_phase(self):
        """XZ = -iY and ZX = +iY"""
        x = PauliString.from_label("+X")
        z = PauliString.from_label("+Z")
        assert (x * z).label == "-iY"
        assert (z * x).label == "+iY"
        assert (x * x).is_identity()

    def test_compose_matches_dense_product(self):
        """Symplectic product agrees with matrix multiplication"""
        for _ in range(20):
            a = random_pauli(3, self.rng, hermitian=False)
            b = random_pauli(3, self.rng, hermitian=False)
            assert np.allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix())

    def test_commutation(self):
        """Commutation is decided by the symplectic form"""
        assert not PauliString.from_label("+X").commutes_with(PauliString.from_label("+Z"))
        assert PauliString.from_label("+XX").commutes_with(PauliString.from_label("+ZZ"))
        for _ in range(20):
            a = random_pauli(2, self.rng)
            b = random_pauli(2, self.rng)
            ma, mb = a.to_matrix(), b.to_matrix()
            assert a.commutes_with(b) == np.allclose(ma @ mb, mb @ ma)

    def test_size_mismatch(self):
        """Strings of different widths do not multiply"""
        with pytest.raises(ValidationError):
            PauliString.from_label("+X") * PauliString.from_label("+XX")

    def test_hermiticity(self):
        """±1 prefixes are Hermitian, ±i prefixes are not"""
        assert PauliString.from_label("-YY").is_hermitian()
        assert not PauliString.from_label("+iX").is_hermitian()

    def test_negation(self):
        """-P flips the sign only"""
        assert -PauliString.from_label("+XZ") == PauliString.from_label("-XZ")

    def test_restricted_and_padded(self):
        """Sub-strings and identity padding keep the phase"""
        p = PauliString.from_label("-XYZ")
        assert p.restricted([0, 2]).label == "-XZ"
        assert p.padded(5).label == "-XYZII"
        with pytest.raises(ValidationError):
            p.padded(2)

    def test_support_and_weight(self):
        """Support lists the non-identity sites"""
        p = PauliString.from_label("+IXIZ")
        assert p.support() == [1, 3]
        assert p.weight() == 2

    def test_all_paulis(self):
        """4^n - 1 non-identity strings, identity on request"""
        assert len(all_paulis(2)) == 15
        assert len(all_paulis(2, include_identity=True)) == 16
        assert len({p.label for p in all_paulis(2)}) == 15

    def test_majoranas_anticommute(self):
        """Distinct Jordan-Wigner Majoranas anticommute"""
        n = 3
        gammas = [majorana_pauli(j, n) for j in range(2 * n)]
        for i, a in enumerate(gammas):
            assert a.is_hermitian()
            for b in gammas[i + 1:]:
                assert not a.commutes_with(b)
        with pytest.raises(ValidationError):
            majorana_pauli(6, 3)


def run_pauli_tests():
    """Run all Pauli tests"""
    print("\n" + "=" * 60)
    print("🧪 Running Pauli String Tests")
    print("=" * 60)

    test_suite = TestPauliString()
    tests = [
        ("Label Parsing", test_suite.test_label_parsing),
        ("Bad Labels", test_suite.test_bad_labels_rejected),
        ("Product Phases", test_suite.test_products_track_phase),
        ("Dense Products", test_suite.test_compose_matches_dense_product),
        ("Commutation", test_suite.test_commutation),
        ("Size Mismatch", test_suite.test_size_mismatch),
        ("Hermiticity", test_suite.test_hermiticity),
        ("Negation", test_suite.test_negation),
        ("Restrict and Pad", test_suite.test_restricted_and_padded),
        ("Support", test_suite.test_support_and_weight),
        ("All Paulis", test_suite.test_all_paulis),
        ("Majoranas", test_suite.test_majoranas_anticommute),
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
    success = run_pauli_tests()
    sys.exit(0 if success else 1)
