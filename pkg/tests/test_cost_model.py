"""Tests for the logical cost model"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules import cost_model as cm
from modules.molecule_table import load_shipped, read_counts
from modules.exceptions import ValidationError


class TestCostModel:
    """Test suite for cost_model"""

    def setup_method(self):
        """Setup test fixtures"""
        self.tiny = cm.MolecularInstance("tiny", "none", N=1, R=1, M=1, alpha=1.0)
        self.tiny_budget = cm.ErrorBudget(2.0, 1.0, 1.0)
        self.ec = cm.MolecularInstance("EC", "STO-3G", N=34, R=176, M=4493, alpha=529.0)

    def teardown_method(self):
        """Cleanup test fixtures"""
        self.tiny = None
        self.ec = None

    def test_qrom_closed_forms(self):
        """Count and depth of a λ-way QROM"""
        assert cm.qrom_tcount(16, 1, 4) == 7
        assert cm.qrom_tcount(16, 1, 1) == 16
        assert cm.qrom_tdepth(16, 4) == 6
        assert cm.qrom_tdepth(16, 1) == 16
        with pytest.raises(ValidationError):
            cm.qrom_tcount(16, 1, 0)

    def test_min_count_lambda(self):
        """Exact minimizer, and λ = 1 when words are wide"""
        assert cm.min_count_lambda(16, 1) == 4
        assert cm.min_count_lambda(8, 1000) == 1
        lam = cm.min_count_lambda(4527, 31 * 34)
        best = min(cm.qrom_tcount(4527, 31 * 34, k) for k in range(1, 200))
        assert cm.qrom_tcount(4527, 31 * 34, lam) == best

    def test_min_depth_lambda_respects_block(self):
        """The ancilla block b·λ never exceeds q_max"""
        lam = cm.min_depth_lambda(4493, 14, 1054)
        assert lam * 14 <= 1054
        assert cm.min_depth_lambda(10, 100, 50) == 1

    def test_bit_widths(self):
        """β, μ and the phase-estimation repetitions"""
        assert cm.beta_bits(34, 529, 5e-4) == 31
        assert cm.beta_bits(1, 1, 1) == 6
        assert cm.keep_bits(1.0, 1.0) == 1
        assert cm.keep_bits(529, 5e-4) == 21
        assert cm.keep_bits(1e30, 1e-30, cap=32) == 32
        assert cm.pe_iterations(529, 5e-4, 0.5) == 1661903
        with pytest.raises(ValidationError):
            cm.beta_bits(0, 1, 1)

    def test_degenerate_walk_step(self):
        """N = M = R = 1 with every λ = 1"""
        lambdas = cm.LambdaAssignment({cm.ROTATION_LOOKUP: 1, cm.PREPARE_M: 1, cm.PREPARE_R: 1})
        step = cm.qubitization_cost(self.tiny, self.tiny_budget, lambdas)
        assert step.beta == 6
        assert step.mu == 1
        assert step.n_TQ == 172
        assert step.D_TQ == 22
        assert step.n_L == 14

        rows = {row.label: row for row in cm.volume_breakdown(step)}
        assert rows["select"].share_percent == pytest.approx(100.0 * 20 / 172)
        assert sum(row.share_percent for row in rows.values()) == pytest.approx(100.0)

    def test_lambda_bounds_checked(self):
        """λ above K or missing is refused"""
        too_big = cm.LambdaAssignment({cm.ROTATION_LOOKUP: 3, cm.PREPARE_M: 1, cm.PREPARE_R: 1})
        with pytest.raises(ValidationError):
            cm.qubitization_cost(self.tiny, self.tiny_budget, too_big)
        missing = cm.LambdaAssignment({cm.ROTATION_LOOKUP: 1})
        with pytest.raises(ValidationError):
            cm.qubitization_cost(self.tiny, self.tiny_budget, missing)
        with pytest.raises(ValidationError):
            cm.LambdaAssignment({cm.PREPARE_M: 0})
        with pytest.raises(ValidationError):
            cm.LambdaAssignment({}, strategy="fastest")

    def test_input_validation(self):
        """Instances, budgets and constants check their fields"""
        with pytest.raises(ValidationError):
            cm.MolecularInstance("x", "y", N=0, R=1, M=1, alpha=1.0)
        with pytest.raises(ValidationError):
            cm.MolecularInstance("x", "y", N=1, R=1, M=1, alpha=0.0)
        with pytest.raises(ValidationError):
            cm.ErrorBudget(1.0, 0.6, 0.6)
        with pytest.raises(ValidationError):
            cm.ErrorBudget(1.0, 0.0, 0.5)
        budget = cm.ErrorBudget.from_split(1e-3, 0.25)
        assert budget.split == pytest.approx(0.25)
        assert budget.eps_P == pytest.approx(7.5e-4)

        assert cm.CostConstants.from_dict({"c_sel": 8, "colour": "blue"}).c_sel == 8
        assert cm.CostConstants.from_dict(None) == cm.DEFAULT_CONSTANTS
        with pytest.raises(ValidationError):
            cm.CostConstants.from_dict({"c_ref": 0})

    def test_depth_strategies(self):
        """Depth strategies stay inside the min-count ancilla block"""
        budget = cm.ErrorBudget.from_split(1e-3, 0.5)
        sites = cm.qrom_sites(self.ec, budget.eps_Q)
        count = cm.assign_lambdas(self.ec, budget, cm.MIN_COUNT)
        q_max = max(count[s.label] * s.b for s in sites)
        for strategy in (cm.MIN_DEPTH_CONTINGENT, cm.MIN_DEPTH_INDEPENDENT):
            lambdas = cm.assign_lambdas(self.ec, budget, strategy)
            assert lambdas.strategy == strategy
            for s in sites:
                assert 1 <= lambdas[s.label] <= s.K
                assert lambdas[s.label] * s.b <= q_max
        with pytest.raises(ValidationError):
            cm.assign_lambdas(self.ec, budget, "fastest")

    def test_ethylene_carbonate_minimal_basis(self):
        """EC/STO-3G lands near the published logical counts"""
        report = cm.total_cost(self.ec, 1e-3, "vn")
        assert report.objective == "Vn"
        assert 6.32e10 / 2 <= report.n_T <= 6.32e10 * 2
        assert 0.75 * 2685 <= report.n_L <= 1.5 * 2685
        assert 6 <= report.count_depth_ratio <= 20
        assert report.V_n <= min(value for _, value in report.trace) * (1 + 1e-12)
        assert report.trace_length > 0
        row = report.as_row()
        assert row["name"] == "EC" and row["objective"] == "Vn"
        assert row["V_n"] == row["n_L"] * row["n_T"]

    def test_depth_objective_keeps_qubits(self):
        """The VD optimum trades count for depth on the Vn qubit count"""
        vn = cm.total_cost(self.ec, 1e-3, "vn")
        vd = cm.total_cost(self.ec, 1e-3, "VD")
        assert vd.objective == "VD"
        assert vd.n_L == vn.n_L
        assert vd.D_T <= vn.D_T
        assert vd.n_T >= vn.n_T
        assert 15 <= vd.count_depth_ratio <= 60
        assert any("λ values" in note for note in vd.notes)

    def test_volume_rotation_lambda(self):
        """Volume-chosen rotation λ minimizes n_L·n_TQ at a fixed split"""
        budget = cm.ErrorBudget.from_split(1e-3, 0.05)
        volume = cm.CostConstants(rotation_lambda=cm.ROTATION_BY_VOLUME)
        by_count = cm.optimize_lambda_count(self.ec, budget)
        by_volume = cm.optimize_lambda_count(self.ec, budget, volume)
        assert by_count[cm.ROTATION_LOOKUP] == 2
        assert by_volume[cm.ROTATION_LOOKUP] == 1
        assert by_volume[cm.PREPARE_M] == by_count[cm.PREPARE_M]
        assert by_volume[cm.PREPARE_R] == by_count[cm.PREPARE_R]

        def step_volume(lam):
            lambdas = cm.LambdaAssignment({**by_count.values, cm.ROTATION_LOOKUP: lam})
            step = cm.qubitization_cost(self.ec, budget, lambdas)
            return step.n_L * step.n_TQ

        volumes = [step_volume(lam) for lam in range(1, 200)]
        assert step_volume(by_volume[cm.ROTATION_LOOKUP]) == min(volumes)
        assert step_volume(1) == 225880512
        assert step_volume(2) == 301313040

        contingent = cm.optimize_lambda_depth_contingent(self.ec, budget, volume)
        assert contingent[cm.ROTATION_LOOKUP] == 1
        with pytest.raises(ValidationError):
            cm.CostConstants(rotation_lambda="fastest")

    def test_volume_rotation_total_cost(self):
        """EC/STO-3G with volume-chosen rotation λ matches the published qubits"""
        volume = cm.CostConstants(rotation_lambda=cm.ROTATION_BY_VOLUME)
        report = cm.total_cost(self.ec, 1e-3, "vn", volume)
        default = cm.total_cost(self.ec, 1e-3, "vn")
        assert report.lambdas[cm.ROTATION_LOOKUP] == 1
        assert 0.75 * 2685 <= report.n_L <= 1.25 * 2685
        assert 6.32e10 / 2 <= report.n_T <= 6.32e10 * 2
        assert report.V_n < default.V_n
        assert report.V_n <= min(value for _, value in report.trace) * (1 + 1e-12)

    def test_shipped_table_bands(self):
        """All 35 shipped instances against the published logical counts"""
        published = read_counts()
        table = load_shipped()
        assert len(table) == 35
        within_quarter = 0
        for inst in table:
            label = inst.label
            counts = published[(inst.name, inst.basis)]
            vn = cm.total_cost(inst, 1e-3, "vn")
            vd = cm.total_cost(inst, 1e-3, "vd")

            assert counts.n_T / 2 <= vn.n_T <= counts.n_T * 2, label
            assert 0.75 * counts.n_L <= vn.n_L <= 1.6 * counts.n_L, label
            within_quarter += abs(vn.n_L / counts.n_L - 1) <= 0.25
            if inst.basis == "cc-pVTZ":
                assert abs(vn.n_L / counts.n_L - 1) <= 0.25, label
            assert 6 <= vn.count_depth_ratio <= 20, label

            assert vd.n_L == vn.n_L, label
            assert 15 <= vd.count_depth_ratio <= 60, label
            assert vd.D_T <= vn.D_T, label
            assert vd.n_T >= vn.n_T, label
        assert within_quarter >= 18

    def test_count_scaling_with_rank(self):
        """Optimized n_TQ grows as √M at fixed N = 2"""
        budget = cm.ErrorBudget(1e-3, 1e-4, 9e-4)
        ranks = [2 ** k for k in range(10, 21)]
        counts = []
        for M in ranks:
            inst = cm.MolecularInstance("sweep", "none", N=2, R=1, M=M, alpha=100.0)
            step = cm.qubitization_cost(inst, budget, cm.optimize_lambda_count(inst, budget))
            counts.append(step.n_TQ)
        slope = np.polyfit(np.log(ranks), np.log(counts), 1)[0]
        assert slope == pytest.approx(0.5, abs=0.05)

    def test_split_search_records_refinement_failure(self):
        """A failed golden-section step leaves a note and the grid result"""
        calls = []

        def evaluate(t):
            calls.append(t)
            if len(calls) == 98:
                raise RuntimeError("solver stalled")
            return cm._Trial(cm.ErrorBudget.from_split(1e-3, t), None, 1, (t - 0.3) ** 2)

        search = cm._SplitSearch(evaluate)
        best = search.run()
        assert len(search.failures) == 1
        assert "solver stalled" in search.failures[0]
        assert best.budget.split == pytest.approx(0.3, abs=0.02)

    def test_tighter_budget_costs_more(self):
        """Shrinking ε raises the T-count"""
        loose = cm.total_cost(self.ec, 1e-2, "vn")
        tight = cm.total_cost(self.ec, 1e-3, "vn")
        assert tight.n_T > loose.n_T

    def test_bad_objective(self):
        """Unknown objectives and budgets raise"""
        with pytest.raises(ValidationError):
            cm.total_cost(self.ec, 1e-3, "qubits")
        with pytest.raises(ValidationError):
            cm.total_cost(self.ec, 0.0, "vn")


def run_cost_model_tests():
    """Run all cost model tests"""
    print("\n" + "=" * 60)
    print("🧪 Running Cost Model Tests")
    print("=" * 60)

    test_suite = TestCostModel()
    tests = [
        ("QROM Closed Forms", test_suite.test_qrom_closed_forms),
        ("Min-Count Lambda", test_suite.test_min_count_lambda),
        ("Min-Depth Lambda", test_suite.test_min_depth_lambda_respects_block),
        ("Bit Widths", test_suite.test_bit_widths),
        ("Degenerate Walk Step", test_suite.test_degenerate_walk_step),
        ("Lambda Bounds", test_suite.test_lambda_bounds_checked),
        ("Input Validation", test_suite.test_input_validation),
        ("Depth Strategies", test_suite.test_depth_strategies),
        ("EC/STO-3G", test_suite.test_ethylene_carbonate_minimal_basis),
        ("VD Qubit Count", test_suite.test_depth_objective_keeps_qubits),
        ("Volume Rotation Lambda", test_suite.test_volume_rotation_lambda),
        ("Volume Rotation Estimate", test_suite.test_volume_rotation_total_cost),
        ("Shipped Table Bands", test_suite.test_shipped_table_bands),
        ("Count Scaling", test_suite.test_count_scaling_with_rank),
        ("Split Search Failure", test_suite.test_split_search_records_refinement_failure),
        ("Tighter Budget", test_suite.test_tighter_budget_costs_more),
        ("Bad Objective", test_suite.test_bad_objective),
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
    success = run_cost_model_tests()
    sys.exit(0 if success else 1)
