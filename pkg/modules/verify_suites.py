"""Dense-oracle verification suites behind `faultline verify`

Each suite draws its random instances from one seed and returns every check
with its worst residual, so a failure report says how far off it was.
"""

import inspect
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import factorizer, gizens, oracle_sim, ppm_engine
from .clifford_frame import CliffordFrame
from .exceptions import ValidationError
from .pauli import PauliString, all_paulis, random_pauli
from .utils import Tolerances, ceil_log2

SUITES = ("gizens", "ppm", "factorizer")

# Post-measurement states must agree to this infidelity
_FIDELITY_SLACK = 1e-10


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: Optional[float] = None
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, residual: float, tolerance: float, detail: str = "") -> None:
        self.checks.append(CheckResult(name, residual <= tolerance, residual, detail))

    def expect(self, name: str, condition: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(condition), None, detail))


def _unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.normal(size=n)
    return u / np.linalg.norm(u)


# ----------------------------------------------------------------------
# Basis-change circuits
# ----------------------------------------------------------------------

def gizens_suite(seed: int = 42, samples: int = 100, sizes: tuple[int, ...] = (2, 4, 8)) -> SuiteResult:
    """Tree and ladder circuits against dense conjugation of γ_0"""
    rng = np.random.default_rng(seed)
    result = SuiteResult("gizens", seed)
    for n in sizes:
        tree_res = ladder_res = agree_res = column_res = 0.0
        counts_ok = depth_ok = disjoint_ok = True
        for _ in range(samples):
            u = _unit_vector(n, rng)
            tree = gizens.gizens_tree(u)
            ladder = gizens.givens_ladder(u)
            counts_ok &= tree.rotation_count == n - 1 and ladder.rotation_count == n - 1
            depth_ok &= tree.depth == ceil_log2(n)
            disjoint_ok &= tree.layers_disjoint()
            tree_res = max(tree_res, gizens.verify_basis_change(tree, u).residual)
            ladder_res = max(ladder_res, gizens.verify_basis_change(ladder, u).residual)
            agree_res = max(agree_res, float(np.linalg.norm(
                gizens.conjugated_majorana(tree, 0) - gizens.conjugated_majorana(ladder, 0)
            )))
            column_res = max(column_res, float(np.max(np.abs(gizens.induced_rotation(tree)[:, 0] - u))))
        result.add(f"N={n} tree Vγ0V† residual", tree_res, Tolerances.ORACLE)
        result.add(f"N={n} ladder Vγ0V† residual", ladder_res, Tolerances.ORACLE)
        result.add(f"N={n} ladder/tree agreement", agree_res, Tolerances.ORACLE)
        result.add(f"N={n} induced rotation column", column_res, Tolerances.ORACLE)
        result.expect(f"N={n} rotation count N-1", counts_ok)
        result.expect(f"N={n} tree depth ⌈log2 N⌉", depth_ok)
        result.expect(f"N={n} tree layers disjoint", disjoint_ok)
    return result


# ----------------------------------------------------------------------
# PPM circuits, frame and compiled streams
# ----------------------------------------------------------------------

def _ppm_circuit_residuals(
    build: Callable[[PauliString], ppm_engine.PpmCircuit],
    paulis: list[PauliString],
    states: list[np.ndarray],
) -> tuple[float, float]:
    """Worst probability gap and worst infidelity against direct projection"""
    prob_gap = infidelity = 0.0
    for p in paulis:
        circuit = build(p)
        for psi in states:
            p_plus, p_minus = oracle_sim.outcome_probabilities(psi, p)
            dist = ppm_engine.ppm_distribution(circuit, psi)
            for outcome, direct in ((1, p_plus), (-1, p_minus)):
                prob, post = dist.get(outcome, (0.0, None))
                prob_gap = max(prob_gap, abs(prob - direct))
                if direct > Tolerances.PROBABILITY and post is not None:
                    expected = oracle_sim.project(psi, p, outcome)
                    expected = expected / np.linalg.norm(expected)
                    infidelity = max(infidelity, 1.0 - oracle_sim.fidelity(post, expected))
    return prob_gap, infidelity


def _y_register_residual(paulis: list[PauliString], states: list[np.ndarray], rng: np.random.Generator) -> float:
    worst = 0.0
    y_state = oracle_sim.BASIS_STATES["Y"]
    for p in paulis:
        circuit = ppm_engine.ppm_circuit_no_phase(p)
        for psi in states:
            shot = ppm_engine.run_ppm_circuit(circuit, psi, rng)
            worst = max(worst, 1.0 - oracle_sim.fidelity(shot.y_state, y_state))
    return worst


def _frame_residual(pairs: int, max_qubits: int, rng: np.random.Generator) -> float:
    """Frame lookups against W†PW for random correction sequences"""
    worst = 0.0
    for _ in range(pairs):
        n = int(rng.integers(1, max_qubits + 1))
        frame = CliffordFrame(n)
        w = np.eye(2 ** n, dtype=complex)
        for _ in range(int(rng.integers(1, 7))):
            k = int(rng.integers(0, 4))
            correction = random_pauli(n, rng)
            frame.update(k, correction)
            w = w @ oracle_sim.ppr_matrix(correction, k * math.pi / 4)
        p = random_pauli(n, rng)
        expected = w.conj().T @ p.to_matrix() @ w
        worst = max(worst, float(np.max(np.abs(frame.lookup(p).to_matrix() - expected))))
    return worst


def _stream_residuals(programs: int, shots: int, n_qubits: int, n_gates: int, rng: np.random.Generator) -> tuple[int, float]:
    """Shot-by-shot comparison of compiled execution with direct simulation

    Returns:
        Tuple of (mismatched user outcomes, worst logical-state infidelity)
    """
    mismatches = 0
    infidelity = 0.0
    for _ in range(programs):
        program = ppm_engine.random_program(n_qubits, n_gates, rng)
        stream = ppm_engine.compile_program(program)
        for shot in range(shots):
            executed = ppm_engine.execute(stream, seed=shot)
            outcomes, direct = ppm_engine.simulate_program(program, seed=shot)
            if executed.user_outcomes() != outcomes:
                mismatches += 1
                continue
            logical = oracle_sim.reduced_pure_state(executed.logical_state(), n_qubits)
            infidelity = max(infidelity, 1.0 - oracle_sim.fidelity(logical, direct))
    return mismatches, infidelity


def ppm_suite(
    seed: int = 42,
    samples: int = 100,
    shots: int = 500,
    frame_pairs: int = 1000,
    programs: int = 4,
) -> SuiteResult:
    """PPM circuits, Clifford frame and compiled streams against the dense oracle"""
    rng = np.random.default_rng(seed)
    result = SuiteResult("ppm", seed)
    paulis = all_paulis(3)
    states = [oracle_sim.random_state(3, rng) for _ in range(samples)]

    gap, infid = _ppm_circuit_residuals(ppm_engine.ppm_circuit, paulis, states)
    result.add("CAT circuit probabilities", gap, Tolerances.ORACLE)
    result.add("CAT circuit post-state infidelity", infid, _FIDELITY_SLACK)

    gap, infid = _ppm_circuit_residuals(ppm_engine.ppm_circuit_no_phase, paulis, states)
    result.add("no-S† circuit probabilities", gap, Tolerances.ORACLE)
    result.add("no-S† circuit post-state infidelity", infid, _FIDELITY_SLACK)
    result.add("|Y⟩ register restored", _y_register_residual(paulis, states[: max(1, samples // 10)], rng), _FIDELITY_SLACK)

    result.add(f"frame lookups vs dense conjugation ({frame_pairs} pairs)", _frame_residual(frame_pairs, 5, rng), Tolerances.ORACLE)

    mismatches, infid = _stream_residuals(programs, shots, 4, 20, rng)
    result.expect(f"compiled streams match direct simulation ({programs}×{shots} shots)", mismatches == 0,
                  f"{mismatches} mismatched shots" if mismatches else "")
    result.add("compiled stream logical-state infidelity", infid, _FIDELITY_SLACK)

    ordered = [random_pauli(4, rng) for _ in range(40)]
    try:
        ppm_engine.schedule_layers(ordered, m=3).validate()
        result.expect("layer schedule keeps anticommuting order", True)
    except ValidationError as e:
        result.expect("layer schedule keeps anticommuting order", False, str(e))
    return result


# ----------------------------------------------------------------------
# Factorizer
# ----------------------------------------------------------------------

def factorizer_suite(seed: int = 42, samples: int = 20, max_orbitals: int = 8) -> SuiteResult:
    """Round-trip and truncation-bound checks on synthetic PSD tensors"""
    rng = np.random.default_rng(seed)
    result = SuiteResult("factorizer", seed)

    zero = factorizer.factorize(np.zeros((3, 3, 3, 3)))
    max_abs, _ = factorizer.reconstruction_error(zero, np.zeros((3, 3, 3, 3)))
    result.add("zero tensor reconstructs", max_abs, 0.0)
    result.expect("zero tensor has rank 0", zero.rank_R == 0 and zero.alpha == 0.0)

    roundtrip = bound_excess = 0.0
    alpha_ok = monotone_ok = True
    for _ in range(samples):
        n = int(rng.integers(2, max_orbitals + 1))
        h = factorizer.synthetic_tensor(n, int(rng.integers(1, 4)), rng)
        full = factorizer.factorize(h)
        scale = max(1.0, float(np.max(np.abs(h))))
        roundtrip = max(roundtrip, factorizer.reconstruction_error(full, h)[0] / scale)

        total = float(np.sum(full.block_norms() ** 2))
        eps_small, eps_large = sorted(rng.uniform(0.0, total, size=2))
        small = factorizer.truncate(full, eps_small)
        large = factorizer.truncate(full, eps_large)
        for cut in (small, large):
            _, frobenius = factorizer.reconstruction_error(cut, h)
            bound_excess = max(bound_excess, frobenius - cut.truncation_error_bound)
            alpha_ok &= cut.alpha <= full.alpha * (1 + 1e-12)
        monotone_ok &= small.rank_M >= large.rank_M and small.truncation_error_bound <= large.truncation_error_bound

    result.add(f"untruncated round trip ({samples} tensors)", roundtrip, Tolerances.RECONSTRUCTION)
    result.add("truncated error within reported bound", max(0.0, bound_excess), Tolerances.RECONSTRUCTION)
    result.expect("truncation never increases α", alpha_ok)
    result.expect("truncation monotone in the budget", monotone_ok)
    return result


def run_suites(suite: str = "all", seed: int = 42, **options) -> list[SuiteResult]:
    """Run one suite or all of them

    Raises:
        ValidationError: Unknown suite name
    """
    runners = {"gizens": gizens_suite, "ppm": ppm_suite, "factorizer": factorizer_suite}
    if suite == "all":
        names = list(SUITES)
    elif suite in runners:
        names = [suite]
    else:
        raise ValidationError(f"unknown suite '{suite}' (use {', '.join(SUITES)} or all)")
    results = []
    for name in names:
        runner = runners[name]
        accepted = inspect.signature(runner).parameters
        results.append(runner(seed=seed, **{k: v for k, v in options.items() if k in accepted and v is not None}))
    return results


def format_results(results: list[SuiteResult]) -> str:
    """Pass/fail lines with residuals, one block per suite"""
    lines = []
    for suite in results:
        lines.append(f"{'✅' if suite.passed else '❌'} {suite.suite} (seed {suite.seed})")
        for check in suite.checks:
            mark = "✅ PASS" if check.passed else "❌ FAIL"
            residual = f"  residual {check.residual:.3e}" if check.residual is not None else ""
            detail = f"  ({check.detail})" if check.detail else ""
            lines.append(f"    {mark}: {check.name}{residual}{detail}")
    return "\n".join(lines)
