"""Tests for tensor file formats"""

import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules.exceptions import ValidationError
from modules.factorizer import synthetic_tensor
from modules.tensor_io import read_one_body, read_tensor, write_one_body, write_tensor


class TestTensorIO:
    """Test suite for tensor_io"""

    def setup_method(self):
        """Setup test fixtures"""
        self.test_dir = Path(tempfile.mkdtemp())
        self.h = synthetic_tensor(3, 2, np.random.default_rng(1))

    def teardown_method(self):
        """Cleanup test fixtures"""
        if self.test_dir.exists():
            shutil.rmtree(self.test_dir)

    def test_text_tensor(self):
        """Text files keep every value exactly"""
        path = write_tensor(self.test_dir / "h.txt", self.h)
        assert path.read_text().splitlines()[0] == "3"
        assert np.array_equal(read_tensor(path), self.h)

    def test_binary_tensor(self):
        """.bin files carry a u64 header and float64 values"""
        path = write_tensor(self.test_dir / "h.bin", self.h)
        assert path.stat().st_size == 8 + 8 * 81
        assert np.array_equal(read_tensor(path), self.h)

    def test_binary_override(self):
        """The binary flag overrides the suffix"""
        path = write_tensor(self.test_dir / "h.raw", self.h, binary=True)
        assert np.array_equal(read_tensor(path, binary=True), self.h)

    def test_one_body(self):
        """One-body matrices use the same layout with N² values"""
        t = np.array([[1.0, 0.5], [0.5, -2.0]])
        path = write_one_body(self.test_dir / "t.txt", t)
        assert np.array_equal(read_one_body(path), t)

    def test_malformed_files(self):
        """Counts, headers and numbers are checked"""
        short = self.test_dir / "short.txt"
        short.write_text("2\n1 2 3\n")
        with pytest.raises(ValidationError, match="expected 16 values"):
            read_tensor(short)

        empty = self.test_dir / "empty.txt"
        empty.write_text("")
        with pytest.raises(ValidationError, match="line 1"):
            read_tensor(empty)

        header = self.test_dir / "header.txt"
        header.write_text("two\n1\n")
        with pytest.raises(ValidationError, match="orbital count"):
            read_tensor(header)

        words = self.test_dir / "words.txt"
        words.write_text("1\nabc\n")
        with pytest.raises(ValidationError, match="non-numeric"):
            read_tensor(words)

        truncated = self.test_dir / "cut.bin"
        truncated.write_bytes(b"\x01\x00")
        with pytest.raises(ValidationError, match="header"):
            read_tensor(truncated)

    def test_missing_file(self):
        """Missing files raise FileNotFoundError"""
        with pytest.raises(FileNotFoundError):
            read_tensor(self.test_dir / "absent.txt")

    def test_bad_shape_on_write(self):
        """Only square arrays of the right rank are written"""
        with pytest.raises(ValidationError):
            write_tensor(self.test_dir / "bad.txt", np.zeros((2, 2)))
        with pytest.raises(ValidationError):
            write_one_body(self.test_dir / "bad.txt", np.zeros((2, 3)))


def run_tensor_io_tests():
    """Run all tensor I/O tests"""
    print("\n" + "=" * 60)
    print("🧪 Running Tensor I/O Tests")
    print("=" * 60)

    test_suite = TestTensorIO()
    tests = [
        ("Text Tensor", test_suite.test_text_tensor),
        ("Binary Tensor", test_suite.test_binary_tensor),
        ("Binary Override", test_suite.test_binary_override),
        ("One-Body", test_suite.test_one_body),
        ("Malformed Files", test_suite.test_malformed_files),
        ("Missing File", test_suite.test_missing_file),
        ("Bad Shape", test_suite.test_bad_shape_on_write),
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
    success = run_tensor_io_tests()
    sys.exit(0 if success else 1)
