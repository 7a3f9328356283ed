"""Dense statevector oracle

Brute-force simulation used to verify basis-change circuits and Pauli product
measurements. States are complex vectors of length 2^n with qubit 0 as the
most significant bit (leftmost tensor factor). Everything is capped at
Limits.MAX_DENSE_QUBITS qubits.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .exceptions import CapacityError, ValidationError
from .pauli import PauliString, all_paulis, majorana_pauli
from .utils import Limits, Tolerances

# Standard gates
I2 = np.eye(2, dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.diag([1, 1j]).astype(complex)
SDG = np.diag([1, -1j]).astype(complex)
T = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)

GATES = {"H": H, "S": S, "SDG": SDG, "T": T, "X": X, "Y": Y, "Z": Z, "CX": CX, "CZ": CZ}

# Single-qubit preparations, as state vectors
BASIS_STATES = {
    "0": np.array([1, 0], dtype=complex),
    "1": np.array([0, 1], dtype=complex),
    "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "-": np.array([1, -1], dtype=complex) / np.sqrt(2),
    "Y": np.array([1, 1j], dtype=complex) / np.sqrt(2),
    "T": np.array([1, np.exp(1j * np.pi / 4)], dtype=complex) / np.sqrt(2),
}


def check_capacity(n_qubits: int) -> None:
    """Raise CapacityError above the dense simulation limit"""
    if n_qubits > Limits.MAX_DENSE_QUBITS:
        raise CapacityError(
            f"{n_qubits} qubits requested, dense oracle supports at most {Limits.MAX_DENSE_QUBITS}"
        )


def num_qubits(state: np.ndarray) -> int:
    n = int(round(np.log2(state.shape[0])))
    if 2 ** n != state.shape[0]:
        raise ValidationError(f"state length {state.shape[0]} is not a power of two")
    return n


# ----------------------------------------------------------------------
# States
# ----------------------------------------------------------------------

def zero_state(n_qubits: int) -> np.ndarray:
    check_capacity(n_qubits)
    state = np.zeros(2 ** n_qubits, dtype=complex)
    state[0] = 1.0
    return state


def product_state(labels: Sequence[str]) -> np.ndarray:
    """Tensor product of single-qubit states named in BASIS_STATES"""
    check_capacity(len(labels))
    state = np.ones(1, dtype=complex)
    for label in labels:
        state = np.kron(state, BASIS_STATES[label])
    return state


def random_state(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like random state from complex Gaussian amplitudes"""
    check_capacity(n_qubits)
    amps = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return amps / np.linalg.norm(amps)


def extend(state: np.ndarray, labels: Sequence[str]) -> np.ndarray:
    """Append freshly prepared qubits after the existing ones"""
    check_capacity(num_qubits(state) + len(labels))
    return np.kron(state, product_state(labels)) if labels else state.copy()


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2 for normalized inputs"""
    return float(abs(np.vdot(a, b)) ** 2)


# ----------------------------------------------------------------------
# Pauli action
# ----------------------------------------------------------------------

def _xmask(p: PauliString) -> int:
    n = p.n
    return sum(1 << (n - 1 - q) for q in range(n) if p.x[q])


def pauli_apply(state: np.ndarray, p: PauliString) -> np.ndarray:
    """Return P|state> without building the dense matrix

    (X^x Z^z)|b> = (-1)^{popcount(z & b)} |b xor x>, times i^s.
    """
    n = num_qubits(state)
    if p.n != n:
        raise ValidationError(f"Pauli on {p.n} qubits applied to {n}-qubit state")
    check_capacity(n)
    xmask = _xmask(p)
    idx = np.arange(state.shape[0])
    parity = np.zeros(state.shape[0], dtype=np.int64)
    for q in range(n):
        if p.z[q]:
            parity ^= (idx >> (n - 1 - q)) & 1
    out = np.empty_like(state)
    out[idx ^ xmask] = (1 - 2 * parity) * state
    return (1j ** p.s) * out


def expectation(state: np.ndarray, p: PauliString) -> float:
    """<state|P|state> for Hermitian P"""
    return float(np.real(np.vdot(state, pauli_apply(state, p))))


def apply_ppr(state: np.ndarray, p: PauliString, theta: float) -> np.ndarray:
    """Apply exp(i*theta*P) = cos(theta) + i*sin(theta)*P

    Raises:
        ValidationError: P is not Hermitian
        CapacityError: Too many qubits
    """
    if not p.is_hermitian():
        raise ValidationError(f"rotation generator {p.label} is not Hermitian")
    return np.cos(theta) * state + 1j * np.sin(theta) * pauli_apply(state, p)


def ppr_matrix(p: PauliString, theta: float) -> np.ndarray:
    """Dense exp(i*theta*P)"""
    check_capacity(p.n)
    if not p.is_hermitian():
        raise ValidationError(f"rotation generator {p.label} is not Hermitian")
    return np.cos(theta) * np.eye(2 ** p.n, dtype=complex) + 1j * np.sin(theta) * p.to_matrix()


def outcome_probabilities(state: np.ndarray, p: PauliString) -> tuple[float, float]:
    """(p(+1), p(-1)) for a projective measurement of Hermitian P"""
    if not p.is_hermitian():
        raise ValidationError(f"measured operator {p.label} is not Hermitian")
    mean = expectation(state, p) / max(np.vdot(state, state).real, Tolerances.UNIT_NORM)
    p_plus = min(1.0, max(0.0, 0.5 * (1.0 + mean)))
    return p_plus, 1.0 - p_plus


def project(state: np.ndarray, p: PauliString, outcome: int) -> np.ndarray:
    """Unnormalized (1 + outcome*P)/2 |state>"""
    return 0.5 * (state + outcome * pauli_apply(state, p))


def measure_pauli(
    state: np.ndarray,
    p: PauliString,
    rng: Optional[np.random.Generator] = None,
    outcome: Optional[int] = None,
) -> tuple[int, np.ndarray]:
    """Projective measurement of Hermitian P

    Args:
        state: Normalized input state
        p: Hermitian Pauli to measure
        rng: Generator used for Born sampling
        outcome: Force this ±1 outcome instead of sampling

    Returns:
        Tuple of (outcome, normalized post-measurement state)

    Raises:
        ValidationError: P not Hermitian, or a forced outcome has zero probability
    """
    p_plus, p_minus = outcome_probabilities(state, p)
    if outcome is None:
        # one draw per measurement, deterministic or not, keeps seeded streams aligned
        rng = rng if rng is not None else np.random.default_rng()
        draw = rng.random()
        if p_minus <= Tolerances.PROBABILITY:
            outcome = 1
        elif p_plus <= Tolerances.PROBABILITY:
            outcome = -1
        else:
            outcome = 1 if draw < p_plus else -1
    else:
        if outcome not in (1, -1):
            raise ValidationError(f"outcome must be ±1, got {outcome}")
        prob = p_plus if outcome == 1 else p_minus
        if prob <= Tolerances.PROBABILITY:
            raise ValidationError(f"forced outcome {outcome} of {p.label} has zero probability")
    post = project(state, p, outcome)
    return outcome, post / np.linalg.norm(post)


# ----------------------------------------------------------------------
# Gates and circuits
# ----------------------------------------------------------------------

def apply_gate(state: np.ndarray, gate: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Apply a k-qubit gate to the listed qubits (first listed = most significant)"""
    n = num_qubits(state)
    k = len(qubits)
    if gate.shape != (2 ** k, 2 ** k):
        raise ValidationError(f"gate shape {gate.shape} does not act on {k} qubits")
    psi = state.reshape([2] * n)
    g = gate.reshape([2] * (2 * k))
    psi = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), list(qubits)))
    psi = np.moveaxis(psi, list(range(k)), list(qubits))
    return psi.reshape(-1)


def run_gates(state: np.ndarray, ops: Sequence[tuple[str, Sequence[int]]]) -> np.ndarray:
    """Apply a list of (gate name, qubits) in time order"""
    for name, qubits in ops:
        state = apply_gate(state, GATES[name], qubits)
    return state


def circuit_unitary(n_qubits: int, ops: Sequence[tuple[str, Sequence[int]]]) -> np.ndarray:
    """Dense unitary of a gate list (columns are images of basis states)"""
    check_capacity(n_qubits)
    dim = 2 ** n_qubits
    columns = [run_gates(np.eye(dim, dtype=complex)[:, j], ops) for j in range(dim)]
    return np.stack(columns, axis=1)


def conjugate(unitary: np.ndarray, operator: np.ndarray | PauliString) -> np.ndarray:
    """Dense C^dagger P C"""
    matrix = operator.to_matrix() if isinstance(operator, PauliString) else operator
    if matrix.shape != unitary.shape:
        raise ValidationError(f"shape mismatch {matrix.shape} vs {unitary.shape}")
    return unitary.conj().T @ matrix @ unitary


def decompose_pauli(matrix: np.ndarray) -> Optional[PauliString]:
    """Write `matrix` as a phase times a single Pauli string, if possible

    Exhaustive projection onto the Pauli basis; returns None when the matrix
    is not a phase (±1, ±i) times one Pauli string.
    """
    n = int(round(np.log2(matrix.shape[0])))
    check_capacity(n)
    dim = 2 ** n
    for p in all_paulis(n, include_identity=True):
        coeff = np.vdot(p.to_matrix(), matrix) / dim
        if abs(abs(coeff) - 1.0) < Tolerances.ORACLE:
            for k in range(4):
                if abs(coeff - 1j ** k) < Tolerances.ORACLE:
                    candidate = p.times_phase(k)
                    if np.allclose(candidate.to_matrix(), matrix, atol=Tolerances.ORACLE):
                        return candidate
            return None
    return None


def discard(state: np.ndarray, qubits: Sequence[int], vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Contract `qubits` with the bras <v| of `vectors` (unnormalized result)"""
    n = num_qubits(state)
    psi = state.reshape([2] * n)
    for qubit, vec in sorted(zip(qubits, vectors), key=lambda t: -t[0]):
        psi = np.tensordot(np.conj(vec), psi, axes=([0], [qubit]))
    return psi.reshape(-1)


def reduced_pure_state(state: np.ndarray, keep: int) -> np.ndarray:
    """Pure state of the first `keep` qubits when the rest is a product factor

    Raises:
        ValidationError: The state is entangled across the cut
    """
    n = num_qubits(state)
    matrix = state.reshape(2 ** keep, 2 ** (n - keep))
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    if s.size > 1 and s[1] > 1e-6:
        raise ValidationError("state is entangled across the requested cut")
    return u[:, 0]


# ----------------------------------------------------------------------
# Majorana operators
# ----------------------------------------------------------------------

def majorana(j: int, n_qubits: int) -> np.ndarray:
    """Dense Jordan-Wigner Majorana gamma_j on n_qubits qubits"""
    check_capacity(n_qubits)
    return majorana_pauli(j, n_qubits).to_matrix()
