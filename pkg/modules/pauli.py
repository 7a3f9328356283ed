"""Symplectic Pauli strings

A PauliString stores P = i^s (X^x_0 ... X^x_{n-1})(Z^z_0 ... Z^z_{n-1}) as two
boolean arrays and a phase exponent modulo 4. The letter Y is i*X*Z, so a
string written with Y letters carries one extra power of i per Y internally.

Labels use a sign prefix followed by one letter per qubit, qubit 0 first:
"+XIZY", "-ZZ", "+iXY", "-iZ". The prefix is the phase relative to the
product of the Hermitian letter matrices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .exceptions import ValidationError

_PREFIXES = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_PREFIX_OUT = ("+", "+i", "-", "-i")
_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliString:
    """Pauli operator on n qubits with exact phase tracking"""

    __slots__ = ("x", "z", "s")

    def __init__(self, x: Sequence[int], z: Sequence[int], s: int = 0):
        self.x = np.asarray(x, dtype=bool).copy()
        self.z = np.asarray(z, dtype=bool).copy()
        if self.x.shape != self.z.shape or self.x.ndim != 1:
            raise ValidationError("x and z bit vectors must have the same length")
        self.s = int(s) % 4

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(np.zeros(n, dtype=bool), np.zeros(n, dtype=bool), 0)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse a label such as "+XIZY" or "-iZZ"

        Raises:
            ValidationError: Unknown prefix or letter
        """
        text = label.strip()
        body_start = 0
        while body_start < len(text) and text[body_start] in "+-i":
            body_start += 1
        prefix, body = text[:body_start], text[body_start:]
        if prefix not in _PREFIXES:
            raise ValidationError(f"bad Pauli prefix '{prefix}' in '{label}'")
        if not body:
            raise ValidationError(f"empty Pauli string '{label}'")

        x = np.zeros(len(body), dtype=bool)
        z = np.zeros(len(body), dtype=bool)
        for q, letter in enumerate(body.upper()):
            if letter not in _LETTERS:
                raise ValidationError(f"bad Pauli letter '{letter}' in '{label}'")
            x[q], z[q] = _LETTERS[letter]
        n_y = int(np.count_nonzero(x & z))
        return cls(x, z, _PREFIXES[prefix] + n_y)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        """Single-qubit Pauli `letter` acting on `qubit` of an n-qubit register"""
        body = ["I"] * n
        body[qubit] = letter
        return cls.from_label("+" + "".join(body))

    @classmethod
    def from_sites(cls, n: int, sites: dict[int, str], sign: int = 1) -> PauliString:
        """Build a string from {qubit: letter} with an overall ±1 sign"""
        body = ["I"] * n
        for qubit, letter in sites.items():
            body[qubit] = letter
        return cls.from_label(("+" if sign > 0 else "-") + "".join(body))

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def num_y(self) -> int:
        return int(np.count_nonzero(self.x & self.z))

    @property
    def label_phase(self) -> int:
        """Phase exponent relative to the Hermitian letter product"""
        return (self.s - self.num_y) % 4

    @property
    def sign(self) -> complex:
        return 1j ** self.label_phase

    @property
    def letters(self) -> str:
        out = []
        for xb, zb in zip(self.x, self.z):
            out.append("Y" if xb and zb else "X" if xb else "Z" if zb else "I")
        return "".join(out)

    @property
    def label(self) -> str:
        return _PREFIX_OUT[self.label_phase] + self.letters

    def support(self) -> list[int]:
        return [int(q) for q in np.flatnonzero(self.x | self.z)]

    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def is_identity(self) -> bool:
        return not (self.x.any() or self.z.any())

    def is_hermitian(self) -> bool:
        return self.label_phase % 2 == 0

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def _check_size(self, other: PauliString) -> None:
        if other.n != self.n:
            raise ValidationError(f"Pauli size mismatch: {self.n} vs {other.n}")

    def commutes_with(self, other: PauliString) -> bool:
        """Symplectic commutation test"""
        self._check_size(other)
        parity = np.count_nonzero(self.x & other.z) + np.count_nonzero(self.z & other.x)
        return parity % 2 == 0

    def compose(self, other: PauliString) -> PauliString:
        """Operator product self * other"""
        self._check_size(other)
        swap = int(np.count_nonzero(self.z & other.x))
        return PauliString(self.x ^ other.x, self.z ^ other.z, self.s + other.s + 2 * swap)

    def __mul__(self, other: PauliString) -> PauliString:
        return self.compose(other)

    def times_phase(self, k: int) -> PauliString:
        """Multiply by i^k"""
        return PauliString(self.x, self.z, self.s + k)

    def __neg__(self) -> PauliString:
        return self.times_phase(2)

    def tensor(self, other: PauliString) -> PauliString:
        """self on the first qubits, other on the following ones"""
        return PauliString(
            np.concatenate([self.x, other.x]),
            np.concatenate([self.z, other.z]),
            self.s + other.s,
        )

    def restricted(self, qubits: Iterable[int]) -> PauliString:
        """Letters on `qubits` only, keeping the label phase"""
        idx = list(qubits)
        body = self.letters
        return PauliString.from_label(_PREFIX_OUT[self.label_phase] + "".join(body[q] for q in idx))

    def padded(self, n: int) -> PauliString:
        """Extend with identities up to n qubits"""
        if n < self.n:
            raise ValidationError(f"cannot pad {self.n} qubits down to {n}")
        extra = n - self.n
        return PauliString(
            np.concatenate([self.x, np.zeros(extra, dtype=bool)]),
            np.concatenate([self.z, np.zeros(extra, dtype=bool)]),
            self.s,
        )

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix, qubit 0 as the leftmost tensor factor"""
        matrix = np.ones((1, 1), dtype=complex)
        for letter in self.letters:
            matrix = np.kron(matrix, _SINGLE[letter])
        return self.sign * matrix

    def copy(self) -> PauliString:
        return PauliString(self.x, self.z, self.s)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self.n == other.n
            and self.s == other.s
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self) -> int:
        return hash(self.label)

    def __repr__(self) -> str:
        return f"PauliString('{self.label}')"


def all_paulis(n: int, include_identity: bool = False) -> list[PauliString]:
    """Every +-signed letter string on n qubits, in lexicographic IXYZ order"""
    out = []
    for code in range(4 ** n):
        body = []
        for _ in range(n):
            body.append("IXYZ"[code % 4])
            code //= 4
        p = PauliString.from_label("+" + "".join(reversed(body)))
        if include_identity or not p.is_identity():
            out.append(p)
    return out


def random_pauli(n: int, rng: np.random.Generator, hermitian: bool = True) -> PauliString:
    """Uniformly random Pauli string (never the identity)"""
    while True:
        x = rng.integers(0, 2, size=n).astype(bool)
        z = rng.integers(0, 2, size=n).astype(bool)
        if x.any() or z.any():
            break
    phase = int(rng.integers(0, 2)) * 2 if hermitian else int(rng.integers(0, 4))
    p = PauliString(x, z, 0)
    return p.times_phase(phase + p.num_y)


def majorana_pauli(j: int, n_qubits: int) -> PauliString:
    """Jordan-Wigner Majorana: gamma_2k = Z..Z X_k, gamma_2k+1 = Z..Z Y_k"""
    if not 0 <= j < 2 * n_qubits:
        raise ValidationError(f"Majorana index {j} out of range for {n_qubits} qubits")
    mode, odd = divmod(j, 2)
    sites = {q: "Z" for q in range(mode)}
    sites[mode] = "Y" if odd else "X"
    return PauliString.from_sites(n_qubits, sites)
