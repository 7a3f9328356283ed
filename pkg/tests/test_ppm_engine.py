"""Tests for the PPM engine: CAT circuits, compiled streams and layer scheduling"""

import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from modules import oracle_sim
from modules import ppm_engine as ppm
from modules.exceptions import ValidationError
from modules.pauli import PauliString, all_paulis


class TestPpmEngine:
    """Test suite for ppm_engine"""

    def setup_method(self):
        """Setup test fixtures"""
        self.test_dir = tempfile.mkdtemp()
        self.rng = np.random.default_rng(21)

    def teardown_method(self):
        """Cleanup test fixtures"""
        if Path(self.test_dir).exists():
            shutil.rmtree(self.test_dir)

    # ------------------------------------------------------------------
    # CAT circuits
    # ------------------------------------------------------------------

    def test_circuit_gate_counts(self):
        """S† only in the phased variant, plus a |Y⟩ register in the other"""
        p = PauliString.from_label("+XYZ")
        phased = ppm.ppm_circuit(p)
        assert len(phased.ancillas) == 3
        assert phased.gate_count("CX") == 4
        assert phased.gate_count("CZ") == 2
        assert phased.gate_count("SDG") == 1

        plain = ppm.ppm_circuit_no_phase(p)
        assert plain.gate_count("SDG") == 0
        assert plain.width == 8
        assert plain.parity_correction == -1

    def test_circuit_refuses_bad_paulis(self):
        """Identity and non-Hermitian operators cannot be measured"""
        with pytest.raises(ValidationError):
            ppm.ppm_circuit(PauliString.from_label("+II"))
        with pytest.raises(ValidationError):
            ppm.ppm_circuit_no_phase(PauliString.from_label("+iXZ"))

    def test_distribution_matches_projection(self):
        """Both circuit variants reproduce Born probabilities and post-states"""
        states = [oracle_sim.random_state(2, self.rng) for _ in range(3)]
        for build in (ppm.ppm_circuit, ppm.ppm_circuit_no_phase):
            for p in all_paulis(2):
                for sign in (1, -1):
                    target = p if sign == 1 else -p
                    circuit = build(target)
                    for psi in states:
                        p_plus, p_minus = oracle_sim.outcome_probabilities(psi, target)
                        dist = ppm.ppm_distribution(circuit, psi)
                        for outcome, direct in ((1, p_plus), (-1, p_minus)):
                            prob, post = dist[outcome]
                            assert abs(prob - direct) < 1e-9
                            if direct > 1e-9:
                                expected = oracle_sim.project(psi, target, outcome)
                                expected = expected / np.linalg.norm(expected)
                                assert oracle_sim.fidelity(post, expected) > 1 - 1e-9

    def test_single_shot_on_eigenstate(self):
        """Eigenstates give their eigenvalue and the |Y⟩ register comes back"""
        zero = oracle_sim.zero_state(1)
        shot = ppm.run_ppm_circuit(ppm.ppm_circuit(PauliString.from_label("+Z")), zero, self.rng)
        assert shot.outcome == 1
        assert oracle_sim.fidelity(shot.state, zero) > 1 - 1e-12

        shot = ppm.run_ppm_circuit(ppm.ppm_circuit(PauliString.from_label("-Z")), zero, self.rng)
        assert shot.outcome == -1

        y_plus = oracle_sim.product_state(["Y"])
        shot = ppm.run_ppm_circuit(ppm.ppm_circuit_no_phase(PauliString.from_label("+Y")), y_plus, self.rng)
        assert shot.outcome == 1
        assert oracle_sim.fidelity(shot.y_state, oracle_sim.BASIS_STATES["Y"]) > 1 - 1e-12

    # ------------------------------------------------------------------
    # Programs
    # ------------------------------------------------------------------

    def test_parse_program(self):
        """Comments are skipped and the width comes from the Paulis"""
        program = ppm.parse_program("# header\nT +XZ  # rotate\nC 1 -ZZ\nM +XI\nINIT 1 t\nD 0 y\n")
        assert program.n_qubits == 2
        kinds = [inst.kind for inst in program.instructions]
        assert kinds == [ppm.PPR_T, ppm.CLIFFORD, ppm.MEASURE, ppm.INIT, ppm.DESTRUCTIVE_MEAS]
        assert program.instructions[3].basis == "T"
        assert ppm.parse_program(ppm.format_program(program)).instructions == program.instructions

        assert ppm.parse_program("INIT 2 +\n").n_qubits == 3

    def test_parse_errors_carry_line(self):
        """Malformed lines are reported with their number"""
        cases = [
            ("T +XZ\nM +XZZ\n", "line 2"),
            ("C 5 +ZZ\n", "line 1"),
            ("FOO +X\n", "line 1"),
            ("INIT x 0\n", "line 1"),
            ("T +XQ\n", "line 1"),
            ("T +X\nD 0 Q\n", "line 2"),
        ]
        for text, where in cases:
            with pytest.raises(ValidationError, match=where):
                ppm.parse_program(text)

    def test_read_program(self):
        """Programs load from files"""
        path = Path(self.test_dir) / "prog.txt"
        path.write_text("T +Z\nM +X\n")
        program = ppm.read_program(path)
        assert program.n_qubits == 1
        assert len(program.instructions) == 2

    def test_compile_reuses_magic_register(self):
        """Each T gadget is five ops on one recycled register"""
        program = ppm.parse_program("T +XZ\nT +ZZ\nT +XX\n")
        stream = ppm.compile_program(program)
        assert len(stream.ops) == 15
        assert ppm.t_count(stream) == 3
        assert ppm.magic_register_count(stream) == 1
        assert stream.n_qubits == 3
        assert not any(op.recorded for op in stream.ops)

    def test_compile_t_state_init(self):
        """INIT to |T⟩ is a reset followed by one gadget"""
        stream = ppm.compile_program(ppm.parse_program("INIT 0 T\n"))
        assert len(stream.ops) == 7
        assert ppm.t_count(stream) == 1

    def test_deterministic_programs(self):
        """Known outcomes survive compilation under every seed"""
        cases = [
            ("INIT 0 +\nD 0 X\n", [1]),
            ("INIT 0 0\nC 2 +X\nD 0 Z\n", [-1]),
            ("INIT 0 Y\nD 0 Y\n", [1]),
            ("INIT 0 +\nT +Z\nT +Z\nD 0 Y\n", [-1]),
            ("INIT 0 +\nT +Z\nT +Z\nT +Z\nT +Z\nD 0 X\n", [-1]),
        ]
        for text, expected in cases:
            stream = ppm.compile_program(ppm.parse_program(text))
            for seed in range(6):
                assert ppm.execute(stream, seed=seed).user_outcomes() == expected, text

    def test_execute_matches_direct_simulation(self):
        """Compiled execution agrees with direct simulation shot by shot"""
        for _ in range(2):
            program = ppm.random_program(3, 12, self.rng)
            stream = ppm.compile_program(program)
            for seed in range(4):
                executed = ppm.execute(stream, seed=seed)
                outcomes, direct = ppm.simulate_program(program, seed=seed)
                assert executed.user_outcomes() == outcomes
                logical = oracle_sim.reduced_pure_state(executed.logical_state(), 3)
                assert oracle_sim.fidelity(logical, direct) > 1 - 1e-9
                assert executed.frame.is_valid()

    def test_format_record(self):
        """Only user measurements unless all are requested"""
        stream = ppm.compile_program(ppm.parse_program("INIT 0 +\nD 0 X\n"))
        result = ppm.execute(stream, seed=0)
        assert ppm.format_record(result) == "2 +X +1\n"
        assert len(ppm.format_record(result, all_measurements=True).splitlines()) == 2

    def test_random_program_measures(self):
        """Every fifth instruction is a measurement"""
        program = ppm.random_program(2, 10, self.rng)
        assert program.instructions[4].kind == ppm.MEASURE
        assert program.instructions[9].kind == ppm.MEASURE

    # ------------------------------------------------------------------
    # Scheduling
    # ------------------------------------------------------------------

    def test_commuting_ppms_share_layers(self):
        """Commuting PPMs pack into layers of at most min(m, d)"""
        paulis = [PauliString.from_label(label) for label in ("+ZII", "+IZI", "+IIZ", "+ZZI", "+ZZZ")]
        assert ppm.schedule_layers(paulis).depth == 1
        assert ppm.speedup_estimate(ppm.schedule_layers(paulis)) == 5.0
        capped = ppm.schedule_layers(paulis, m=2)
        assert capped.layers == [[0, 1], [2, 3], [4]]
        assert ppm.schedule_layers(paulis, m=4, d=2).depth == 3

    def test_anticommuting_order_kept(self):
        """Anticommuting PPMs stay in program order"""
        paulis = [PauliString.from_label(label) for label in ("+ZI", "+XI", "+IZ")]
        schedule = ppm.schedule_layers(paulis)
        assert schedule.layers == [[0, 2], [1]]
        schedule.validate()

        chain = [PauliString.from_label(label) for label in ("+X", "+Z", "+X")]
        assert ppm.schedule_layers(chain).depth == 3

    def test_schedule_validation(self):
        """Broken layers and bad widths are refused"""
        x, z = PauliString.from_label("+X"), PauliString.from_label("+Z")
        with pytest.raises(ValidationError):
            ppm.PpmLayerSchedule([[0, 1]], [x, z], None, None).validate()
        with pytest.raises(ValidationError):
            ppm.PpmLayerSchedule([[1], [0]], [x, z], None, None).validate()
        with pytest.raises(ValidationError):
            ppm.schedule_layers([x], m=0)

    def test_rotation_paulis(self):
        """T rotations are picked out in order"""
        program = ppm.parse_program("T +XZ\nC 1 +ZZ\nT +ZX\n")
        labels = [p.label for p in ppm.rotation_paulis(program)]
        assert labels == ["+XZ", "+ZX"]


def run_ppm_engine_tests():
    """Run all PPM engine tests"""
    print("\n" + "=" * 60)
    print("🧪 Running PPM Engine Tests")
    print("=" * 60)

    test_suite = TestPpmEngine()
    tests = [
        ("Circuit Gate Counts", test_suite.test_circuit_gate_counts),
        ("Bad Paulis", test_suite.test_circuit_refuses_bad_paulis),
        ("Distribution vs Projection", test_suite.test_distribution_matches_projection),
        ("Single Shot", test_suite.test_single_shot_on_eigenstate),
        ("Parse Program", test_suite.test_parse_program),
        ("Parse Errors", test_suite.test_parse_errors_carry_line),
        ("Read Program", test_suite.test_read_program),
        ("Magic Register Reuse", test_suite.test_compile_reuses_magic_register),
        ("T-State Init", test_suite.test_compile_t_state_init),
        ("Deterministic Programs", test_suite.test_deterministic_programs),
        ("Execute vs Simulate", test_suite.test_execute_matches_direct_simulation),
        ("Format Record", test_suite.test_format_record),
        ("Random Program", test_suite.test_random_program_measures),
        ("Commuting Layers", test_suite.test_commuting_ppms_share_layers),
        ("Anticommuting Order", test_suite.test_anticommuting_order_kept),
        ("Schedule Validation", test_suite.test_schedule_validation),
        ("Rotation Paulis", test_suite.test_rotation_paulis),
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
    success = run_ppm_engine_tests()
    sys.exit(0 if success else 1)
