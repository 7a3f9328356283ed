"""Tests for CSV, table and plot-data output"""

import shutil
import sys
import tempfile
from pathlib import Path

import pandas as pd
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules import report_writer as rw
from modules.cost_model import MolecularInstance, total_cost
from modules.exceptions import ValidationError
from modules.ft_overhead import REGIMES, estimate_overhead, tradeoff_curve


class TestReportWriter:
    """Test suite for report_writer"""

    def setup_method(self):
        """Setup test fixtures"""
        self.test_dir = Path(tempfile.mkdtemp())
        self.overhead = estimate_overhead(6.32e10, 2685, REGIMES["moderate"])

    def teardown_method(self):
        """Cleanup test fixtures"""
        if self.test_dir.exists():
            shutil.rmtree(self.test_dir)

    def _estimate(self) -> pd.DataFrame:
        inst = MolecularInstance("EC", "STO-3G", N=34, R=176, M=4493, alpha=529.0)
        return rw.estimate_frame([total_cost(inst, 1e-3, "vn")])

    def test_estimate_columns(self):
        """Estimate CSVs carry exactly the documented columns"""
        frame = self._estimate()
        assert tuple(frame.columns) == rw.ESTIMATE_COLUMNS
        path = rw.write_csv(frame, self.test_dir / "estimate.csv")
        kind, loaded = rw.read_report(path)
        assert kind == "estimate"
        assert loaded.loc[0, "name"] == "EC"
        assert int(loaded.loc[0, "V_n"]) == int(loaded.loc[0, "n_L"]) * int(loaded.loc[0, "n_T"])

    def test_overhead_round_trip(self):
        """Overhead rows keep three significant digits for the run time"""
        frame = rw.overhead_frame([rw.overhead_row("EC", "STO-3G", self.overhead)])
        path = rw.write_csv(frame, self.test_dir / "out" / "overhead.csv")
        kind, loaded = rw.read_report(path)
        assert kind == "overhead"
        assert loaded.loc[0, "t_algo_hours"] == "0.421"
        assert int(loaded.loc[0, "n_RSG"]) == 3231360
        assert int(loaded.loc[0, "d"]) == 24

    def test_deterministic_bytes(self):
        """The same frame always gives the same file"""
        frame = rw.overhead_frame([rw.overhead_row("EC", "STO-3G", self.overhead)])
        first = rw.write_csv(frame, self.test_dir / "a.csv").read_bytes()
        second = rw.write_csv(frame, self.test_dir / "b.csv").read_bytes()
        assert first == second
        assert b"\r\n" not in first

    def test_curve_frame(self):
        """Trade-off curves are recognized by their header"""
        points = tradeoff_curve(6.32e10, 2685, REGIMES["moderate"], interleave_values=(1, 10))
        frame = rw.curve_frame("EC", "STO-3G", "moderate", points)
        assert rw.detect_kind(frame.columns) == "curve"
        assert list(frame["L_intl"]) == [1, 10]

    def test_unknown_header(self):
        """Foreign CSVs and empty files are refused"""
        with pytest.raises(ValidationError, match="line 1"):
            rw.detect_kind(["a", "b"])
        empty = self.test_dir / "empty.csv"
        empty.write_text("")
        with pytest.raises(ValidationError):
            rw.read_report(empty)
        with pytest.raises(FileNotFoundError):
            rw.read_report(self.test_dir / "absent.csv")

    def test_table_view(self):
        """Estimate tables add the count-to-depth ratio"""
        text = rw.format_table(self._estimate(), "estimate")
        assert "n_T/D_T" in text
        assert "EC" in text
        assert rw.format_table(pd.DataFrame(columns=list(rw.OVERHEAD_COLUMNS)), "overhead") == "(no rows)"

    def test_plot_data(self):
        """Plot data has a '#' header and one row per point"""
        frame = rw.overhead_frame([rw.overhead_row("EC", "STO-3G", self.overhead)])
        text = rw.render(frame, "overhead", "plotdata")
        lines = text.splitlines()
        assert lines[0] == "# name basis regime L_intl n_RSG t_algo_hours"
        assert lines[1] == "EC STO-3G moderate 1 3231360 0.421"

    def test_render_formats(self):
        """csv and table render, unknown formats and kinds raise"""
        frame = rw.overhead_frame([rw.overhead_row("EC", "STO-3G", self.overhead)])
        assert rw.render(frame, "overhead", "csv").startswith(",".join(rw.OVERHEAD_COLUMNS))
        assert "EC" in rw.render(frame, "overhead", "table")
        with pytest.raises(ValidationError):
            rw.render(frame, "overhead", "xlsx")
        with pytest.raises(ValidationError):
            rw.plot_data(frame, "mystery")


def run_report_writer_tests():
    """Run all report writer tests"""
    print("\n" + "=" * 60)
    print("🧪 Running Report Writer Tests")
    print("=" * 60)

    test_suite = TestReportWriter()
    tests = [
        ("Estimate Columns", test_suite.test_estimate_columns),
        ("Overhead Round Trip", test_suite.test_overhead_round_trip),
        ("Deterministic Bytes", test_suite.test_deterministic_bytes),
        ("Curve Frame", test_suite.test_curve_frame),
        ("Unknown Header", test_suite.test_unknown_header),
        ("Table View", test_suite.test_table_view),
        ("Plot Data", test_suite.test_plot_data),
        ("Render Formats", test_suite.test_render_formats),
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
    success = run_report_writer_tests()
    sys.exit(0 if success else 1)
