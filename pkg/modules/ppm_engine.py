"""Pauli product measurement engine

Three layers:

  * gate-level PPM circuits built on a CAT ancilla (with and without S†)
  * compilation of Clifford+T programs into streams of INIT / PPM /
    conditional CLIFFORD operations, and their execution with a Clifford
    frame on the dense oracle
  * commuting-layer scheduling of PPMs for parallel magic-state consumption
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import oracle_sim
from .clifford_frame import CliffordFrame
from .exceptions import ValidationError
from .pauli import PauliString, random_pauli
from .utils import Tolerances

# ----------------------------------------------------------------------
# Gate-level PPM circuits
# ----------------------------------------------------------------------

@dataclass
class PpmCircuit:
    """CAT-state measurement circuit for one Pauli

    Qubit layout: data 0..n-1, then the CAT ancillas, then the |Y⟩ register
    (no-phase variant only).
    """
    pauli: PauliString
    ancillas: list[int]
    ops: list[tuple[str, tuple[int, ...]]]
    sign: int
    parity_correction: int = 1
    y_register: Optional[int] = None

    @property
    def n_data(self) -> int:
        return self.pauli.n

    @property
    def width(self) -> int:
        return self.n_data + len(self.ancillas) + (1 if self.y_register is not None else 0)

    def gate_count(self, name: str) -> int:
        return sum(1 for gate, _ in self.ops if gate == name)


@dataclass
class PpmShot:
    """Result of running a PPM circuit once"""
    outcome: int
    state: np.ndarray
    y_state: Optional[np.ndarray] = None


def _measured_sign(p: PauliString) -> int:
    if p.is_identity():
        raise ValidationError("cannot measure the identity")
    if not p.is_hermitian():
        raise ValidationError(f"measured operator {p.label} is not Hermitian")
    return 1 if p.label_phase == 0 else -1


def _cat_ops(ancillas: Sequence[int]) -> list[tuple[str, tuple[int, ...]]]:
    ops = [("H", (ancillas[0],))]
    for a, b in zip(ancillas, ancillas[1:]):
        ops.append(("CX", (a, b)))
    return ops


def ppm_circuit(p: PauliString) -> PpmCircuit:
    """CAT-state circuit measuring P with explicit S† on Y sites

    Site recipes: X -> CX, Z -> CZ, Y -> CX then CZ then S† on the ancilla.
    The outcome is sign(P) times the parity of the ancilla X measurements.

    Raises:
        ValidationError: P is the identity or not Hermitian
    """
    sign = _measured_sign(p)
    support = p.support()
    n = p.n
    ancillas = list(range(n, n + len(support)))
    ops = _cat_ops(ancillas)
    letters = p.letters
    for a, q in zip(ancillas, support):
        letter = letters[q]
        if letter in "XY":
            ops.append(("CX", (a, q)))
        if letter in "ZY":
            ops.append(("CZ", (a, q)))
        if letter == "Y":
            ops.append(("SDG", (a,)))
    return PpmCircuit(p, ancillas, ops, sign)


def ppm_circuit_no_phase(p: PauliString) -> PpmCircuit:
    """CAT-state circuit that never applies S†

    Each Y site picks up a factor i. One extra CAT ancilla acts on a |Y⟩
    register when the Y count is odd, so the total phase is (-1)^(n_Y'/2)
    with n_Y' even; the register is left in |Y⟩.

    Raises:
        ValidationError: P is the identity or not Hermitian
    """
    sign = _measured_sign(p)
    support = p.support()
    n = p.n
    ancillas = list(range(n, n + len(support) + 1))
    y_reg = n + len(ancillas)
    ops = [("H", (y_reg,)), ("S", (y_reg,))] + _cat_ops(ancillas)
    letters = p.letters
    for a, q in zip(ancillas, support):
        letter = letters[q]
        if letter in "XY":
            ops.append(("CX", (a, q)))
        if letter in "ZY":
            ops.append(("CZ", (a, q)))
    n_y = p.num_y
    if n_y % 2:
        ops.append(("CX", (ancillas[-1], y_reg)))
        ops.append(("CZ", (ancillas[-1], y_reg)))
        n_y += 1
    return PpmCircuit(p, ancillas, ops, sign, parity_correction=(-1) ** (n_y // 2), y_register=y_reg)


def _run_entangling(circuit: PpmCircuit, state: np.ndarray) -> np.ndarray:
    extra = len(circuit.ancillas) + (1 if circuit.y_register is not None else 0)
    oracle_sim.check_capacity(circuit.n_data + extra)
    full = oracle_sim.extend(state, ["0"] * extra)
    return oracle_sim.run_gates(full, circuit.ops)


def _ancilla_parity_operator(circuit: PpmCircuit) -> PauliString:
    return PauliString.from_sites(circuit.width, {a: "X" for a in circuit.ancillas})


def _split_result(circuit: PpmCircuit, full: np.ndarray, bits: Sequence[int]) -> tuple[np.ndarray, Optional[np.ndarray]]:
    vectors = [oracle_sim.BASIS_STATES["+" if b == 1 else "-"] for b in bits]
    rest = oracle_sim.discard(full, circuit.ancillas, vectors)
    rest = rest / np.linalg.norm(rest)
    if circuit.y_register is None:
        return rest, None
    data = oracle_sim.reduced_pure_state(rest, circuit.n_data)
    y_state = oracle_sim.reduced_pure_state(rest.reshape(2 ** circuit.n_data, 2).T.reshape(-1), 1)
    return data, y_state


def ppm_distribution(circuit: PpmCircuit, state: np.ndarray) -> dict[int, tuple[float, Optional[np.ndarray]]]:
    """Exact outcome distribution of a PPM circuit

    Returns:
        {outcome: (probability, post-measurement data state or None)}
    """
    full = _run_entangling(circuit, state)
    parity_op = _ancilla_parity_operator(circuit)
    result = {}
    for parity in (1, -1):
        projected = oracle_sim.project(full, parity_op, parity)
        prob = float(np.vdot(projected, projected).real)
        outcome = circuit.sign * circuit.parity_correction * parity
        post = None
        if prob > Tolerances.PROBABILITY:
            bits = [parity] + [1] * (len(circuit.ancillas) - 1)
            post, _ = _split_result(circuit, projected / math.sqrt(prob), bits)
        result[outcome] = (prob, post)
    return result


def run_ppm_circuit(circuit: PpmCircuit, state: np.ndarray, rng: np.random.Generator) -> PpmShot:
    """Run a PPM circuit once with sampled ancilla outcomes

    The parity is sampled by the Born rule; the individual ancilla outcomes
    are uniform among strings of that parity.
    """
    full = _run_entangling(circuit, state)
    parity, full = oracle_sim.measure_pauli(full, _ancilla_parity_operator(circuit), rng)
    w = len(circuit.ancillas)
    bits = [1 if b else -1 for b in rng.integers(0, 2, size=w - 1)]
    bits.append(parity * int(np.prod(bits)) if bits else parity)
    data, y_state = _split_result(circuit, full, bits)
    return PpmShot(circuit.sign * circuit.parity_correction * parity, data, y_state)


# ----------------------------------------------------------------------
# Logical programs
# ----------------------------------------------------------------------

PPR_T = "T"
CLIFFORD = "C"
MEASURE = "M"
INIT = "INIT"
DESTRUCTIVE_MEAS = "D"

INIT_BASES = ("0", "+", "T", "Y")
MEAS_BASES = ("X", "Y", "Z")


@dataclass(frozen=True)
class LogicalInstruction:
    """One Clifford+T program instruction

    kind is one of T (exp(iπ/8 P)), C (exp(ikπ/4 P)), M (PPM of P),
    INIT (reset `qubit` to `basis`) or D (single-qubit measurement).
    """
    kind: str
    pauli: Optional[PauliString] = None
    k: int = 0
    qubit: Optional[int] = None
    basis: Optional[str] = None

    def describe(self) -> str:
        if self.kind == PPR_T:
            return f"T {self.pauli.label}"
        if self.kind == CLIFFORD:
            return f"C {self.k} {self.pauli.label}"
        if self.kind == MEASURE:
            return f"M {self.pauli.label}"
        if self.kind == INIT:
            return f"INIT {self.qubit} {self.basis}"
        return f"D {self.qubit} {self.basis}"


@dataclass
class Program:
    n_qubits: int
    instructions: list[LogicalInstruction] = field(default_factory=list)


@dataclass(frozen=True)
class StreamOp:
    """One compiled operation

    CLIFFORD ops carry their Pauli in instruction terms; `condition` names the
    stream index of the PPM whose -1 outcome triggers them.
    """
    kind: str
    pauli: Optional[PauliString] = None
    k: int = 0
    qubit: Optional[int] = None
    basis: Optional[str] = None
    condition: Optional[int] = None
    recorded: bool = False
    source: int = -1


@dataclass
class CompiledStream:
    n_data: int
    n_qubits: int
    ops: list[StreamOp] = field(default_factory=list)


def _check_instruction(inst: LogicalInstruction, n: int) -> None:
    if inst.kind in (PPR_T, CLIFFORD, MEASURE):
        if inst.pauli is None or inst.pauli.n != n:
            raise ValidationError(f"'{inst.describe() if inst.pauli else inst.kind}' does not act on {n} qubits")
        if not inst.pauli.is_hermitian():
            raise ValidationError(f"{inst.pauli.label} is not Hermitian")
        if inst.kind == MEASURE and inst.pauli.is_identity():
            raise ValidationError("cannot measure the identity")
        if inst.kind == CLIFFORD and inst.k not in (0, 1, 2, 3):
            raise ValidationError(f"Clifford power k must be in 0..3, got {inst.k}")
    elif inst.kind in (INIT, DESTRUCTIVE_MEAS):
        bases = INIT_BASES if inst.kind == INIT else MEAS_BASES
        if inst.qubit is None or not 0 <= inst.qubit < n:
            raise ValidationError(f"qubit {inst.qubit} out of range for {n} qubits")
        if inst.basis not in bases:
            raise ValidationError(f"basis '{inst.basis}' not one of {', '.join(bases)}")
    else:
        raise ValidationError(f"'{inst.kind}' is not a Clifford+T instruction")


class _MagicPool:
    """Magic registers handed out after the data qubits and reused once retired"""

    def __init__(self, first: int):
        self.first = first
        self.free: list[int] = []
        self.allocated = 0

    def take(self) -> int:
        if self.free:
            return self.free.pop()
        self.allocated += 1
        return self.first + self.allocated - 1

    def give_back(self, qubit: int) -> None:
        self.free.append(qubit)


def compile_program(program: Program) -> CompiledStream:
    """Lower a Clifford+T program into INIT / PPM / conditional CLIFFORD ops

    T(P) consumes one |T⟩ register m: PPM of (-P)⊗Z_m, CLIFFORD(1, P) on a -1
    outcome, PPM of X_m, CLIFFORD(2, P) on a -1 outcome. Standalone Cliffords
    become unconditional frame updates. Single-qubit measurements become
    PPMs. INIT of a data qubit is a measurement plus a conditional Pauli fix.

    Raises:
        ValidationError: Unknown instruction kind or malformed operand
    """
    n = program.n_qubits
    for inst in program.instructions:
        _check_instruction(inst, n)
    pool = _MagicPool(first=n)
    body: list[tuple] = []

    def emit(*op) -> int:
        body.append(op)
        return len(body) - 1

    def single(q: int, letter: str) -> PauliString:
        return PauliString.single(n, q, letter)

    def t_gadget(p: PauliString, source: int) -> None:
        m = pool.take()
        emit("INIT", None, 0, m, "T", None, False, source)
        a = emit("PPM", ("t", -p, m), 0, None, None, None, False, source)
        emit("CLIFFORD", p, 1, None, None, a, False, source)
        b = emit("PPM", ("x", None, m), 0, None, None, None, False, source)
        emit("CLIFFORD", p, 2, None, None, b, False, source)
        pool.give_back(m)

    def reset(q: int, measured: str, fix: str, source: int) -> None:
        a = emit("PPM", single(q, measured), 0, None, None, None, False, source)
        emit("CLIFFORD", single(q, fix), 2, None, None, a, False, source)

    for idx, inst in enumerate(program.instructions):
        if inst.kind == PPR_T:
            t_gadget(inst.pauli, idx)
        elif inst.kind == CLIFFORD:
            emit("CLIFFORD", inst.pauli, inst.k, None, None, None, False, idx)
        elif inst.kind == MEASURE:
            emit("PPM", inst.pauli, 0, None, None, None, True, idx)
        elif inst.kind == DESTRUCTIVE_MEAS:
            emit("PPM", single(inst.qubit, inst.basis), 0, None, None, None, True, idx)
        elif inst.basis == "0":
            reset(inst.qubit, "Z", "X", idx)
        elif inst.basis == "+":
            reset(inst.qubit, "X", "Z", idx)
        elif inst.basis == "Y":
            reset(inst.qubit, "Y", "Z", idx)
        else:
            reset(inst.qubit, "X", "Z", idx)
            t_gadget(-single(inst.qubit, "Z"), idx)

    width = n + pool.allocated
    stream = CompiledStream(n_data=n, n_qubits=width)
    for kind, pauli, k, qubit, basis, condition, recorded, source in body:
        if isinstance(pauli, tuple):
            tag, data_part, m = pauli
            if tag == "t":
                pauli = data_part.padded(width) * PauliString.single(width, m, "Z")
            else:
                pauli = PauliString.single(width, m, "X")
        elif pauli is not None:
            pauli = pauli.padded(width)
        stream.ops.append(StreamOp(kind, pauli, k, qubit, basis, condition, recorded, source))
    return stream


def magic_register_count(stream: CompiledStream) -> int:
    """Number of distinct magic registers the stream prepares in |T⟩"""
    return len({op.qubit for op in stream.ops if op.kind == "INIT" and op.basis == "T"})


def t_count(stream: CompiledStream) -> int:
    return sum(1 for op in stream.ops if op.kind == "INIT" and op.basis == "T")


# ----------------------------------------------------------------------
# Execution
# ----------------------------------------------------------------------

_PREP_GATES = {"0": [], "+": ["H"], "Y": ["H", "S"], "T": ["H", "T"]}


class StatevectorBackend:
    """Physical register on the dense oracle"""

    def __init__(self, n_qubits: int, initial_state: Optional[np.ndarray] = None):
        oracle_sim.check_capacity(n_qubits)
        self.n_qubits = n_qubits
        if initial_state is None:
            self.state = oracle_sim.zero_state(n_qubits)
        else:
            extra = n_qubits - oracle_sim.num_qubits(initial_state)
            if extra < 0:
                raise ValidationError("initial state is wider than the register")
            self.state = oracle_sim.extend(np.asarray(initial_state, dtype=complex), ["0"] * extra)

    def measure(self, p: PauliString, rng: np.random.Generator) -> tuple[int, float]:
        p_plus, _ = oracle_sim.outcome_probabilities(self.state, p)
        outcome, self.state = oracle_sim.measure_pauli(self.state, p, rng)
        return outcome, p_plus

    def reset(self, qubit: int, basis: str, rng: np.random.Generator) -> None:
        outcome, self.state = oracle_sim.measure_pauli(
            self.state, PauliString.single(self.n_qubits, qubit, "Z"), rng
        )
        if outcome == -1:
            self.state = oracle_sim.apply_gate(self.state, oracle_sim.X, [qubit])
        for gate in _PREP_GATES[basis]:
            self.state = oracle_sim.apply_gate(self.state, oracle_sim.GATES[gate], [qubit])


@dataclass
class MeasurementRecord:
    index: int
    instruction: PauliString
    physical: PauliString
    outcome: int
    p_plus: float
    recorded: bool


@dataclass
class ExecutionResult:
    measurements: list[MeasurementRecord]
    corrections: list[tuple[int, PauliString]]
    frame: CliffordFrame
    state: np.ndarray

    def user_outcomes(self) -> list[int]:
        return [m.outcome for m in self.measurements if m.recorded]

    def logical_state(self) -> np.ndarray:
        """W·ψ_phys, W the product of absorbed corrections, first on the left"""
        psi = self.state
        for k, p in reversed(self.corrections):
            psi = oracle_sim.apply_ppr(psi, p, k * math.pi / 4)
        return psi


def measurement_rngs(seed: Optional[int]) -> tuple[np.random.Generator, np.random.Generator]:
    """(user, gadget) generators spawned from one seed"""
    user, gadget = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(user), np.random.default_rng(gadget)


def execute(
    stream: CompiledStream,
    seed: Optional[int] = None,
    initial_state: Optional[np.ndarray] = None,
    backend: Optional[StatevectorBackend] = None,
) -> ExecutionResult:
    """Run a compiled stream with a Clifford frame

    Every PPM is looked up through the frame before measurement. Triggered
    corrections are looked up and absorbed into the frame; no correction is
    ever applied to the backend.

    Args:
        stream: Output of compile_program
        seed: Seed for the measurement generators
        initial_state: Optional data-register state (magic registers start in |0⟩)
        backend: Backend to run on (defaults to a fresh statevector)

    Raises:
        CapacityError: Stream wider than the dense oracle supports
    """
    backend = backend or StatevectorBackend(stream.n_qubits, initial_state)
    user_rng, gadget_rng = measurement_rngs(seed)
    frame = CliffordFrame(stream.n_qubits)
    outcomes: dict[int, int] = {}
    measurements = []
    corrections = []

    for index, op in enumerate(stream.ops):
        if op.kind == "INIT":
            backend.reset(op.qubit, op.basis, gadget_rng)
        elif op.kind == "PPM":
            physical = frame.lookup(op.pauli)
            rng = user_rng if op.recorded else gadget_rng
            outcome, p_plus = backend.measure(physical, rng)
            outcomes[index] = outcome
            measurements.append(MeasurementRecord(index, op.pauli, physical, outcome, p_plus, op.recorded))
        elif op.kind == "CLIFFORD":
            if op.condition is not None and outcomes[op.condition] != -1:
                continue
            if op.k == 0:
                continue
            physical = frame.lookup(op.pauli)
            frame.update(op.k, physical)
            corrections.append((op.k, physical))
        else:
            raise ValidationError(f"unknown stream op '{op.kind}'")
    return ExecutionResult(measurements, corrections, frame, backend.state)


def simulate_program(
    program: Program,
    seed: Optional[int] = None,
    initial_state: Optional[np.ndarray] = None,
) -> tuple[list[int], np.ndarray]:
    """Direct dense simulation of a program, for comparison with execute()

    User measurements draw from the same generator as in execute(), so
    outcomes agree shot for shot under a fixed seed.

    Returns:
        Tuple of (user measurement outcomes, final state)
    """
    n = program.n_qubits
    for inst in program.instructions:
        _check_instruction(inst, n)
    state = oracle_sim.zero_state(n) if initial_state is None else np.asarray(initial_state, dtype=complex)
    user_rng, reset_rng = measurement_rngs(seed)
    outcomes = []
    for inst in program.instructions:
        if inst.kind == PPR_T:
            state = oracle_sim.apply_ppr(state, inst.pauli, math.pi / 8)
        elif inst.kind == CLIFFORD:
            state = oracle_sim.apply_ppr(state, inst.pauli, inst.k * math.pi / 4)
        elif inst.kind in (MEASURE, DESTRUCTIVE_MEAS):
            p = inst.pauli if inst.kind == MEASURE else PauliString.single(n, inst.qubit, inst.basis)
            outcome, state = oracle_sim.measure_pauli(state, p, user_rng)
            outcomes.append(outcome)
        else:
            backend = StatevectorBackend(n, state)
            backend.reset(inst.qubit, inst.basis, reset_rng)
            state = backend.state
    return outcomes, state


# ----------------------------------------------------------------------
# Layer scheduling
# ----------------------------------------------------------------------

@dataclass
class PpmLayerSchedule:
    """Commuting layers of PPM indices"""
    layers: list[list[int]]
    paulis: list[PauliString]
    max_width: Optional[int]
    distance: Optional[int]

    @property
    def depth(self) -> int:
        return len(self.layers)

    def validate(self) -> None:
        """Re-check that layers commute and anticommuting pairs stay in order

        Raises:
            ValidationError: A layer holds anticommuting PPMs or order is broken
        """
        where = {}
        for layer_idx, layer in enumerate(self.layers):
            for i in layer:
                where[i] = layer_idx
            for a in range(len(layer)):
                for b in range(a + 1, len(layer)):
                    if not self.paulis[layer[a]].commutes_with(self.paulis[layer[b]]):
                        raise ValidationError(f"layer {layer_idx} holds anticommuting PPMs {layer[a]} and {layer[b]}")
        for i in range(len(self.paulis)):
            for j in range(i + 1, len(self.paulis)):
                if not self.paulis[i].commutes_with(self.paulis[j]) and where[i] >= where[j]:
                    raise ValidationError(f"PPM {j} scheduled no later than anticommuting PPM {i}")


def _width_cap(m: Optional[float], d: Optional[float]) -> float:
    caps = [c for c in (m, d) if c is not None]
    for c in caps:
        if c < 1:
            raise ValidationError(f"width bounds must be >= 1, got {c}")
    return min(caps) if caps else math.inf


def schedule_layers(
    paulis: Sequence[PauliString],
    m: Optional[float] = None,
    d: Optional[float] = None,
) -> PpmLayerSchedule:
    """Greedy first-fit layering that keeps anticommuting PPMs in program order

    Each PPM goes into the first layer after the last one holding a PPM it
    anticommutes with, provided that layer has fewer than min(m, d) members;
    otherwise a new layer is opened.

    Args:
        paulis: PPM Paulis in program order
        m: Maximum parallel PPMs (None for unbounded)
        d: Code distance bound on the layer width (None for unbounded)
    """
    cap = _width_cap(m, d)
    layers: list[list[int]] = []
    for i, p in enumerate(paulis):
        start = 0
        for layer_idx in range(len(layers) - 1, -1, -1):
            if any(not p.commutes_with(paulis[j]) for j in layers[layer_idx]):
                start = layer_idx + 1
                break
        for layer_idx in range(start, len(layers)):
            if len(layers[layer_idx]) < cap:
                layers[layer_idx].append(i)
                break
        else:
            layers.append([i])
    return PpmLayerSchedule(
        layers=layers,
        paulis=list(paulis),
        max_width=None if m is None or math.isinf(m) else int(m),
        distance=None if d is None or math.isinf(d) else int(d),
    )


def speedup_estimate(schedule: PpmLayerSchedule, n_t: Optional[int] = None) -> float:
    """n_T divided by the number of layers (n_T defaults to the PPM count)"""
    if not schedule.layers:
        return 1.0
    n_t = len(schedule.paulis) if n_t is None else n_t
    return n_t / len(schedule.layers)


def rotation_paulis(program: Program) -> list[PauliString]:
    """Paulis of the T rotations of a program, in order"""
    return [inst.pauli for inst in program.instructions if inst.kind == PPR_T]


# ----------------------------------------------------------------------
# Text formats
# ----------------------------------------------------------------------

def parse_program(text: str) -> Program:
    """Parse program text: `T +XIZY`, `C k +ZZII`, `M +ZIII`, `INIT q T|0|+|Y`, `D q Z`

    Raises:
        ValidationError: Malformed line (reported with its line number), or
            Paulis of different widths
    """
    parsed: list[tuple[int, LogicalInstruction]] = []
    width: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].upper()
        try:
            if head == PPR_T and len(parts) == 2:
                inst = LogicalInstruction(PPR_T, PauliString.from_label(parts[1]))
            elif head == CLIFFORD and len(parts) == 3:
                inst = LogicalInstruction(CLIFFORD, PauliString.from_label(parts[2]), k=int(parts[1]))
            elif head == MEASURE and len(parts) == 2:
                inst = LogicalInstruction(MEASURE, PauliString.from_label(parts[1]))
            elif head in (INIT, DESTRUCTIVE_MEAS) and len(parts) == 3:
                basis = parts[2].upper()
                inst = LogicalInstruction(head, qubit=int(parts[1]), basis=basis)
            else:
                raise ValidationError(f"unrecognized instruction '{line}'", line=lineno)
        except ValidationError as e:
            if e.line is None:
                raise ValidationError(str(e), line=lineno) from e
            raise
        except ValueError as e:
            raise ValidationError(f"bad integer in '{line}'", line=lineno) from e
        if inst.pauli is not None:
            if width is not None and inst.pauli.n != width:
                raise ValidationError(f"Pauli width {inst.pauli.n} differs from {width}", line=lineno)
            width = inst.pauli.n
        parsed.append((lineno, inst))

    if width is None:
        qubits = [inst.qubit for _, inst in parsed if inst.qubit is not None]
        width = max(qubits) + 1 if qubits else 0
    for lineno, inst in parsed:
        try:
            _check_instruction(inst, width)
        except ValidationError as e:
            raise ValidationError(str(e), line=lineno) from e
    return Program(n_qubits=width, instructions=[inst for _, inst in parsed])


def format_program(program: Program) -> str:
    return "".join(inst.describe() + "\n" for inst in program.instructions)


def format_record(result: ExecutionResult, all_measurements: bool = False) -> str:
    """One line per measurement: `idx pauli outcome`"""
    lines = []
    for m in result.measurements:
        if m.recorded or all_measurements:
            lines.append(f"{m.index} {m.instruction.label} {m.outcome:+d}")
    return "".join(line + "\n" for line in lines)


def read_program(path: str | Path) -> Program:
    return parse_program(Path(path).read_text())


def random_program(
    n_qubits: int,
    n_gates: int,
    rng: np.random.Generator,
    measure_every: int = 5,
) -> Program:
    """Random Clifford+T program with a measurement every few gates"""
    instructions = []
    for g in range(n_gates):
        p = random_pauli(n_qubits, rng)
        if (g + 1) % measure_every == 0:
            instructions.append(LogicalInstruction(MEASURE, p))
        elif rng.random() < 0.5:
            instructions.append(LogicalInstruction(PPR_T, p))
        else:
            instructions.append(LogicalInstruction(CLIFFORD, p, k=int(rng.integers(0, 4))))
    return Program(n_qubits, instructions)
