"""Clifford frame tracking

The frame is a 2n-row table of Pauli strings. Rows 0..n-1 are the images X̃_q
of the instruction-level X_q, rows n..2n-1 the images Z̃_q of Z_q. Looking up
an instruction Pauli rewrites it into the physical frame, and Clifford
corrections are absorbed by rewriting rows instead of being applied as gates.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exceptions import ValidationError
from .pauli import PauliString

# Rows that anticommute with the correction Pauli P become
# Q -> Q·(cos(kπ/2) + i·sin(kπ/2)·P); the phase added by each k:
_ROW_PHASE = {1: 1, 2: 2, 3: 3}


class CliffordFrame:
    """Symplectic 2n-row frame with exact i^s phases"""

    def __init__(self, n: int):
        self.n = n
        self.xs = np.zeros((2 * n, n), dtype=bool)
        self.zs = np.zeros((2 * n, n), dtype=bool)
        self.s = np.zeros(2 * n, dtype=np.int64)
        idx = np.arange(n)
        self.xs[idx, idx] = True
        self.zs[n + idx, idx] = True
        self.word_ops = 0

    @classmethod
    def identity(cls, n: int) -> CliffordFrame:
        return cls(n)

    @classmethod
    def from_rows(cls, rows: Sequence[PauliString], validate: bool = True) -> CliffordFrame:
        """Build a frame from 2n rows (X̃ rows first)

        Raises:
            ValidationError: Wrong row count or (with validate) a non-symplectic table
        """
        if len(rows) % 2 or not rows:
            raise ValidationError(f"a frame needs 2n rows, got {len(rows)}")
        n = len(rows) // 2
        frame = cls(n)
        for i, row in enumerate(rows):
            if row.n != n:
                raise ValidationError(f"row {i} acts on {row.n} qubits, expected {n}")
            frame.xs[i], frame.zs[i], frame.s[i] = row.x, row.z, row.s
        if validate:
            frame.validate()
        return frame

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], validate: bool = True) -> CliffordFrame:
        """Build a frame from rows of [m^X_1..m^X_n, m^Z_1..m^Z_n, s]"""
        rows = []
        for entry in table:
            entry = list(entry)
            n = (len(entry) - 1) // 2
            rows.append(PauliString(entry[:n], entry[n:2 * n], entry[-1]))
        return cls.from_rows(rows, validate=validate)

    def copy(self) -> CliffordFrame:
        other = CliffordFrame(self.n)
        other.xs, other.zs, other.s = self.xs.copy(), self.zs.copy(), self.s.copy()
        other.word_ops = self.word_ops
        return other

    def row(self, i: int) -> PauliString:
        return PauliString(self.xs[i], self.zs[i], self.s[i])

    def x_row(self, qubit: int) -> PauliString:
        return self.row(qubit)

    def z_row(self, qubit: int) -> PauliString:
        return self.row(self.n + qubit)

    def rows(self) -> list[PauliString]:
        return [self.row(i) for i in range(2 * self.n)]

    def is_identity(self) -> bool:
        return self == CliffordFrame(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordFrame):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.zs, other.zs)
            and np.array_equal(self.s % 4, other.s % 4)
        )

    # ------------------------------------------------------------------
    # Lookup and update
    # ------------------------------------------------------------------

    def lookup(self, p: PauliString) -> PauliString:
        """Rewrite an instruction Pauli into the physical frame

        P = i^s ΠX_q^{x_q} ΠZ_q^{z_q} maps to i^s ΠX̃_q^{x_q} ΠZ̃_q^{z_q}.

        Raises:
            ValidationError: Pauli width differs from the frame width
        """
        if p.n != self.n:
            raise ValidationError(f"Pauli on {p.n} qubits looked up in a {self.n}-qubit frame")
        out = PauliString.identity(self.n).times_phase(p.s)
        for q in np.flatnonzero(p.x):
            out = out * self.row(int(q))
        for q in np.flatnonzero(p.z):
            out = out * self.row(self.n + int(q))
        return out

    def update(self, k: int, p: PauliString) -> None:
        """Absorb the correction exp(ikπ/4 P), with P already in the physical frame

        Rows commuting with P are unchanged. Anticommuting rows Q become i·QP
        (k=1), -Q (k=2) or -i·QP (k=3).

        Raises:
            ValidationError: k outside 0..3, non-Hermitian P, or width mismatch
        """
        if k not in (0, 1, 2, 3):
            raise ValidationError(f"Clifford power k must be in 0..3, got {k}")
        if p.n != self.n:
            raise ValidationError(f"correction on {p.n} qubits for a {self.n}-qubit frame")
        if not p.is_hermitian():
            raise ValidationError(f"correction generator {p.label} is not Hermitian")
        rows = 2 * self.n
        # one parity per row
        self.word_ops += rows
        if k == 0:
            return

        anti = ((self.xs & p.z).sum(axis=1) + (self.zs & p.x).sum(axis=1)) % 2 == 1
        if not anti.any():
            return
        self.word_ops += int(anti.sum())
        if k == 2:
            self.s[anti] += 2
        else:
            swap = (self.zs[anti] & p.x).sum(axis=1)
            self.s[anti] += p.s + 2 * swap + _ROW_PHASE[k]
            self.xs[anti] ^= p.x
            self.zs[anti] ^= p.z
        self.s %= 4

    # ------------------------------------------------------------------
    # Validity
    # ------------------------------------------------------------------

    def commutation_matrix(self) -> np.ndarray:
        """(2n × 2n) matrix of pairwise anticommutation bits between rows"""
        xs = self.xs.astype(np.int64)
        zs = self.zs.astype(np.int64)
        return (xs @ zs.T + zs @ xs.T) % 2

    def validate(self) -> None:
        """Check the rows form a valid frame

        Raises:
            ValidationError: Some row is non-Hermitian or the rows break the
                X̃_i/Z̃_i pairing
        """
        problems = []
        for i in range(2 * self.n):
            if not self.row(i).is_hermitian():
                problems.append(f"row {i} is not Hermitian")
        n = self.n
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        idx = np.arange(n)
        expected[idx, n + idx] = 1
        expected[n + idx, idx] = 1
        bad = np.argwhere(self.commutation_matrix() != expected)
        for i, j in bad:
            if i < j:
                problems.append(f"rows {i} and {j} have the wrong commutation")
        if problems:
            raise ValidationError("invalid Clifford frame: " + "; ".join(problems))

    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValidationError:
            return False
        return True

    def format_table(self) -> str:
        """Frame as text rows: label, m^X bits, m^Z bits, s"""
        lines = []
        for i in range(2 * self.n):
            name = f"X~{i + 1}" if i < self.n else f"Z~{i - self.n + 1}"
            bits = " ".join(str(int(b)) for b in np.concatenate([self.xs[i], self.zs[i]]))
            lines.append(f"{name:<6}{bits}  {int(self.s[i])}")
        return "\n".join(lines)
