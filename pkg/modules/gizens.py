"""Majorana basis-change circuits

Builds circuits V with V γ_0 V† = Σ_j u_j γ_j, where γ_j is the even
Jordan-Wigner Majorana of mode j. Two constructions are provided:

  * givens_ladder: N-1 adjacent rotations applied one after another (depth N-1)
  * gizens_tree: N-1 rotations arranged as a binary tree (depth log2 N)

A rotation (p, q, θ) acts on the Majorana vector as
γ_p -> sinθ γ_p + cosθ γ_q and γ_q -> sinθ γ_q - cosθ γ_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import oracle_sim
from .exceptions import ValidationError
from .pauli import PauliString, majorana_pauli
from .utils import Tolerances, ceil_log2

GIVENS = "givens"
GIZENS = "gizens"


@dataclass(frozen=True)
class Rotation:
    """One two-mode rotation, placed in a layer"""
    kind: str
    p: int
    q: int
    theta: float
    layer: int
    elidable: bool = False


@dataclass
class RotationCircuit:
    """Ordered rotations in application order"""
    n_modes: int
    rotations: list[Rotation] = field(default_factory=list)

    @property
    def rotation_count(self) -> int:
        return len(self.rotations)

    @property
    def depth(self) -> int:
        return len({r.layer for r in self.rotations})

    def layers(self) -> list[list[Rotation]]:
        grouped: dict[int, list[Rotation]] = {}
        for rotation in self.rotations:
            grouped.setdefault(rotation.layer, []).append(rotation)
        return [grouped[k] for k in sorted(grouped)]

    def layers_disjoint(self) -> bool:
        """True when the [p, q) spans inside every layer do not overlap"""
        for layer in self.layers():
            spans = sorted((r.p, r.q) for r in layer)
            for (_, q0), (p1, _) in zip(spans, spans[1:]):
                if p1 < q0:
                    return False
        return True


@dataclass(frozen=True)
class PauliRotationPair:
    """exp(i·angle·first)·exp(i·angle·second), the qubit form of one rotation"""
    first: PauliString
    second: PauliString
    angle: float
    source: Rotation

    def commutes(self) -> bool:
        return self.first.commutes_with(self.second)


@dataclass
class BasisChangeCheck:
    passed: bool
    residual: float


def prepare_vector(u: Sequence[float], pad: bool = False) -> np.ndarray:
    """Validate a Majorana coefficient vector, optionally padding to 2^n

    Raises:
        ValidationError: Zero vector, fewer than two entries, or not unit norm
    """
    vec = np.asarray(u, dtype=float).ravel()
    if vec.size < 2:
        raise ValidationError(f"need at least 2 modes, got {vec.size}")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise ValidationError("zero vector has no basis change")
    if abs(norm - 1.0) > Tolerances.UNIT_NORM * max(1, vec.size):
        raise ValidationError(f"vector is not unit norm (|u| = {norm:.15g})")
    if pad:
        size = 2 ** ceil_log2(vec.size)
        vec = np.concatenate([vec, np.zeros(size - vec.size)])
    return vec


def givens_ladder(u: Sequence[float]) -> RotationCircuit:
    """Linear-depth ladder of adjacent rotations

    Rotation k acts on modes (k, k+1) and moves the weight of the tail
    u[k+1:] one mode further out. Works for any N >= 2.

    Args:
        u: Unit vector of Majorana coefficients

    Returns:
        RotationCircuit with N-1 rotations in N-1 layers
    """
    vec = prepare_vector(u)
    n = vec.size
    # tail[k] = |u[k:]|
    tail = np.sqrt(np.cumsum((vec ** 2)[::-1])[::-1])
    circuit = RotationCircuit(n_modes=n)
    for k in range(n - 1):
        right = vec[k + 1] if k == n - 2 else tail[k + 1]
        elidable = tail[k] == 0.0
        theta = 0.0 if elidable else math.atan2(vec[k], right)
        circuit.rotations.append(Rotation(GIVENS, k, k + 1, theta, layer=k, elidable=elidable))
    return circuit


def gizens_tree(u: Sequence[float]) -> RotationCircuit:
    """Log-depth binary tree of rotations

    Node amplitudes are subtree norms. At layer j the rotation joining
    p = k·2^(n-j+1) and q = p + 2^(n-j) has sinθ·c_parent = c_left and
    cosθ·c_parent = c_right; the leaf layer uses the signed entries of u.

    Args:
        u: Unit vector of Majorana coefficients, zero-padded to a power of two

    Returns:
        RotationCircuit with N-1 rotations in log2(N) layers
    """
    vec = prepare_vector(u, pad=True)
    size = vec.size
    levels = ceil_log2(size)
    circuit = RotationCircuit(n_modes=size)
    for j in range(1, levels + 1):
        half = 2 ** (levels - j)
        for p in range(0, size, 2 * half):
            q = p + half
            if half == 1:
                left, right = vec[p], vec[q]
            else:
                left = float(np.linalg.norm(vec[p:q]))
                right = float(np.linalg.norm(vec[q:q + half]))
            elidable = left == 0.0 and right == 0.0
            theta = 0.0 if elidable else math.atan2(left, right)
            circuit.rotations.append(Rotation(GIZENS, p, q, theta, layer=j - 1, elidable=elidable))
    return circuit


def induced_rotation(circuit: RotationCircuit) -> np.ndarray:
    """N×N orthogonal matrix the circuit applies to Majorana coefficient vectors

    Column 0 equals u for a circuit synthesized from u.
    """
    n = circuit.n_modes
    total = np.eye(n)
    for r in circuit.rotations:
        g = np.eye(n)
        s, c = math.sin(r.theta), math.cos(r.theta)
        g[r.p, r.p] = s
        g[r.q, r.p] = c
        g[r.p, r.q] = -c
        g[r.q, r.q] = s
        total = g @ total
    return total


def jw_encode(circuit: RotationCircuit) -> list[PauliRotationPair]:
    """Jordan-Wigner qubit form of every rotation, in application order

    (p, q, θ) becomes two commuting Pauli rotations, -X_p Z..Z Y_q and
    +Y_p Z..Z X_q, each by angle (π/2 - θ)/2, with Z on the qubits strictly
    between p and q.
    """
    n = circuit.n_modes
    pairs = []
    for r in circuit.rotations:
        between = {k: "Z" for k in range(r.p + 1, r.q)}
        first = PauliString.from_sites(n, {**between, r.p: "X", r.q: "Y"}, sign=-1)
        second = PauliString.from_sites(n, {**between, r.p: "Y", r.q: "X"}, sign=1)
        pairs.append(PauliRotationPair(first, second, (math.pi / 2 - r.theta) / 2, r))
    return pairs


def circuit_unitary(circuit: RotationCircuit) -> np.ndarray:
    """Dense V for the JW-encoded circuit (n_modes qubits)"""
    n = circuit.n_modes
    oracle_sim.check_capacity(n)
    v = np.eye(2 ** n, dtype=complex)
    for pair in jw_encode(circuit):
        g = oracle_sim.ppr_matrix(pair.first, pair.angle) @ oracle_sim.ppr_matrix(pair.second, pair.angle)
        v = g @ v
    return v


def conjugated_majorana(circuit: RotationCircuit, mode: int) -> np.ndarray:
    """Dense V γ_mode V†"""
    v = circuit_unitary(circuit)
    return v @ oracle_sim.majorana(2 * mode, circuit.n_modes) @ v.conj().T


def majorana_coefficients(matrix: np.ndarray, n_qubits: int) -> tuple[np.ndarray, float]:
    """Expand a dense operator over all 2n Majoranas

    Returns:
        Tuple of (coefficients, residual) where residual is the Frobenius
        norm of what the Majorana span leaves over
    """
    dim = 2 ** n_qubits
    coeffs = np.empty(2 * n_qubits, dtype=complex)
    rebuilt = np.zeros_like(matrix)
    for j in range(2 * n_qubits):
        gamma = oracle_sim.majorana(j, n_qubits)
        coeffs[j] = np.vdot(gamma, matrix) / dim
        rebuilt += coeffs[j] * gamma
    return coeffs, float(np.linalg.norm(matrix - rebuilt))


def verify_basis_change(circuit: RotationCircuit, u: Sequence[float]) -> BasisChangeCheck:
    """Check V γ_0 V† = Σ u_j γ_j by dense simulation

    Args:
        circuit: Circuit to check
        u: Target coefficients; zero-padded to the circuit width

    Returns:
        BasisChangeCheck with the Frobenius residual

    Raises:
        CapacityError: Circuit wider than the dense oracle supports
    """
    n = circuit.n_modes
    oracle_sim.check_capacity(n)
    vec = np.asarray(u, dtype=float)
    if vec.size > n:
        raise ValidationError(f"vector has {vec.size} entries, circuit has {n} modes")
    vec = np.concatenate([vec, np.zeros(n - vec.size)])

    target = sum(vec[j] * majorana_pauli(2 * j, n).to_matrix() for j in range(n))
    residual = float(np.linalg.norm(conjugated_majorana(circuit, 0) - target))
    return BasisChangeCheck(passed=residual <= Tolerances.ORACLE, residual=residual)


# ----------------------------------------------------------------------
# Circuit text format
# ----------------------------------------------------------------------

def format_circuit(circuit: RotationCircuit) -> str:
    lines = [f"# modes {circuit.n_modes}"]
    for index, layer in enumerate(circuit.layers()):
        if index:
            lines.append("---")
        for r in layer:
            if r.kind == GIVENS:
                lines.append(f"GIVENS {r.p} {r.theta!r}")
            else:
                lines.append(f"GIZENS {r.p} {r.q} {r.theta!r}")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> RotationCircuit:
    """Parse the circuit text form

    Raises:
        ValidationError: Malformed line (reported with its line number)
    """
    rotations = []
    n_modes = 0
    layer = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "modes":
                n_modes = int(parts[1])
            continue
        if line == "---":
            layer += 1
            continue
        parts = line.split()
        try:
            if parts[0] == "GIVENS" and len(parts) == 3:
                p = int(parts[1])
                rotations.append(Rotation(GIVENS, p, p + 1, float(parts[2]), layer))
            elif parts[0] == "GIZENS" and len(parts) == 4:
                p, q = int(parts[1]), int(parts[2])
                if q <= p:
                    raise ValidationError(f"need p < q, got {p} {q}", line=lineno)
                rotations.append(Rotation(GIZENS, p, q, float(parts[3]), layer))
            else:
                raise ValidationError(f"unrecognized rotation '{line}'", line=lineno)
        except ValueError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"bad number in '{line}'", line=lineno) from e

    widest = max((r.q + 1 for r in rotations), default=0)
    return RotationCircuit(n_modes=max(n_modes, widest), rotations=rotations)


def write_circuit(circuit: RotationCircuit, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_circuit(circuit))
    return path


def read_circuit(path: str | Path) -> RotationCircuit:
    return parse_circuit(Path(path).read_text())
