"""Double factorization of two-electron tensors

h_ijkl ≈ Σ_r L^(r)_ij L^(r)_kl  (first factorization, eigendecomposition of the
N²×N² reshaping) and L^(r) = Σ_m λ_m^(r) R_m^(r) R_m^(r)ᵀ (second
factorization). Truncation drops eigenpairs with the smallest contribution to
the Hamiltonian norm until an error budget is spent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exceptions import IndefiniteTensorError, ValidationError
from .utils import Tolerances

# Eigenvalues of the reshaped tensor below this fraction of the largest are dropped
_RANK_CUTOFF = 1e-12


@dataclass(frozen=True)
class TwoElectronTensor:
    """Dense N×N×N×N coefficient tensor (Hartree)"""
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 4 or len(set(values.shape)) != 1:
            raise ValidationError(f"two-electron tensor must be N×N×N×N, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def n_orbitals(self) -> int:
        return int(self.values.shape[0])

    def check_symmetry(self) -> None:
        """Raise ValidationError naming the first violated symmetry"""
        h = self.values
        atol = Tolerances.SYMMETRY * max(1.0, float(np.max(np.abs(h), initial=0.0)))
        checks = [
            ("(ij)<->(kl) block exchange", h.transpose(2, 3, 0, 1)),
            ("i<->j exchange", h.transpose(1, 0, 2, 3)),
            ("k<->l exchange", h.transpose(0, 1, 3, 2)),
        ]
        for name, permuted in checks:
            if not np.allclose(h, permuted, rtol=0.0, atol=atol):
                raise ValidationError(f"tensor violates {name} symmetry")


@dataclass(frozen=True)
class OneBodyMatrix:
    """Dense symmetric N×N one-body coefficients (Hartree)"""
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValidationError(f"one-body matrix must be square, got shape {values.shape}")
        if not np.allclose(values, values.T, rtol=0.0, atol=Tolerances.SYMMETRY):
            raise ValidationError("one-body matrix is not symmetric")
        object.__setattr__(self, "values", values)

    @property
    def n_orbitals(self) -> int:
        return int(self.values.shape[0])


@dataclass
class FactorizedHamiltonian:
    """Retained L^(r) blocks and their eigenpairs

    eigenvalues[r] holds λ_m^(r) in descending |λ| order and eigenvectors[r]
    the matching unit vectors as columns.
    """
    n_orbitals: int
    l_matrices: list[np.ndarray] = field(default_factory=list)
    eigenvalues: list[np.ndarray] = field(default_factory=list)
    eigenvectors: list[np.ndarray] = field(default_factory=list)
    alpha: float = 0.0
    truncation_error_bound: float = 0.0

    @property
    def rank_R(self) -> int:
        return len(self.l_matrices)

    @property
    def per_rank_M(self) -> list[int]:
        return [int(e.size) for e in self.eigenvalues]

    @property
    def rank_M(self) -> int:
        return sum(self.per_rank_M)

    def eigenpairs(self, r: int) -> list[tuple[float, np.ndarray]]:
        return [(float(lam), self.eigenvectors[r][:, m]) for m, lam in enumerate(self.eigenvalues[r])]

    def block_norms(self) -> np.ndarray:
        """Σ_m |λ_m^(r)| per block"""
        return np.array([np.abs(e).sum() for e in self.eigenvalues])

    def reconstruct(self) -> np.ndarray:
        """Σ_r L^(r) ⊗ L^(r) from the retained eigenpairs"""
        n = self.n_orbitals
        h = np.zeros((n, n, n, n))
        for lam, vecs in zip(self.eigenvalues, self.eigenvectors):
            l_r = (vecs * lam) @ vecs.T
            h += np.einsum("ij,kl->ijkl", l_r, l_r)
        return h


def first_factorize(h: TwoElectronTensor | np.ndarray) -> list[np.ndarray]:
    """Rank-R factorization h_ijkl = Σ_r L^(r)_ij L^(r)_kl

    Args:
        h: Symmetric two-electron tensor

    Returns:
        Symmetric L^(r) matrices in descending eigenvalue order (empty for h = 0)

    Raises:
        ValidationError: A tensor symmetry is violated
        IndefiniteTensorError: The N²×N² reshaping has an eigenvalue below
            -1e-6 times the largest
    """
    tensor = h if isinstance(h, TwoElectronTensor) else TwoElectronTensor(h)
    tensor.check_symmetry()
    n = tensor.n_orbitals
    matrix = tensor.values.reshape(n * n, n * n)
    matrix = 0.5 * (matrix + matrix.T)
    evals, evecs = np.linalg.eigh(matrix)

    scale = float(np.max(np.abs(evals), initial=0.0))
    if scale == 0.0:
        return []
    if evals.min() < -Tolerances.PSD_CLAMP * scale:
        raise IndefiniteTensorError(
            f"reshaped tensor has eigenvalue {evals.min():.3e} (largest {scale:.3e})"
        )
    evals = np.clip(evals, 0.0, None)

    order = np.argsort(-evals, kind="stable")
    factors = []
    for idx in order:
        if evals[idx] <= _RANK_CUTOFF * scale:
            break
        l_r = np.sqrt(evals[idx]) * evecs[:, idx].reshape(n, n)
        factors.append(0.5 * (l_r + l_r.T))
    return factors


def second_factorize(l_matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition L = Σ_m λ_m R_m R_mᵀ

    Returns:
        Tuple of (eigenvalues by descending magnitude, unit eigenvectors as columns)

    Raises:
        ValidationError: The matrix is not symmetric
    """
    l_matrix = np.asarray(l_matrix, dtype=float)
    if l_matrix.ndim != 2 or l_matrix.shape[0] != l_matrix.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {l_matrix.shape}")
    if not np.allclose(l_matrix, l_matrix.T, rtol=0.0, atol=Tolerances.SYMMETRY):
        raise ValidationError("matrix is not symmetric")
    evals, evecs = np.linalg.eigh(l_matrix)
    order = np.argsort(-np.abs(evals), kind="stable")
    return evals[order], evecs[:, order]


def compute_alpha(f: FactorizedHamiltonian, t: Optional[OneBodyMatrix | np.ndarray] = None) -> float:
    """α = ‖eig(t)‖₁ + ¼ Σ_r (Σ_m |λ_m^(r)|)²"""
    one_body = 0.0
    if t is not None:
        values = t.values if isinstance(t, OneBodyMatrix) else OneBodyMatrix(t).values
        one_body = float(np.abs(np.linalg.eigvalsh(values)).sum())
    two_body = 0.25 * float(np.sum(f.block_norms() ** 2))
    return one_body + two_body


def factorize(
    h: TwoElectronTensor | np.ndarray,
    t: Optional[OneBodyMatrix | np.ndarray] = None,
    eps_trunc: float = 0.0,
) -> FactorizedHamiltonian:
    """First and second factorization, truncation and α in one call"""
    tensor = h if isinstance(h, TwoElectronTensor) else TwoElectronTensor(h)
    f = FactorizedHamiltonian(n_orbitals=tensor.n_orbitals)
    for l_r in first_factorize(tensor):
        evals, evecs = second_factorize(l_r)
        f.l_matrices.append(l_r)
        f.eigenvalues.append(evals)
        f.eigenvectors.append(evecs)
    f = truncate(f, eps_trunc) if eps_trunc > 0 else f
    f.alpha = compute_alpha(f, t)
    return f


def _removal_bound(norms: np.ndarray, removed: np.ndarray) -> float:
    # ‖LL - KK‖ ≤ ‖D‖(‖L‖ + ‖K‖) per block, trace norms
    return float(np.sum(removed * (2.0 * norms - removed)))


def truncate(f: FactorizedHamiltonian, eps_trunc: float, t: Optional[OneBodyMatrix | np.ndarray] = None) -> FactorizedHamiltonian:
    """Greedily drop the eigenpairs with the smallest norm contribution

    Eigenpair (r, m) is scored |λ_m^(r)|·Σ_m'|λ_m'^(r)|. Pairs are removed in
    ascending score (ties in ascending (r, m)) while the error bound stays
    below eps_trunc; blocks left without eigenpairs are dropped.

    Args:
        f: Factorization to truncate (not modified)
        eps_trunc: Error budget in Hartree, >= 0
        t: One-body matrix for the recomputed α

    Returns:
        New FactorizedHamiltonian with updated ranks, α and error bound

    Raises:
        ValidationError: eps_trunc is negative
    """
    if eps_trunc < 0:
        raise ValidationError(f"truncation budget must be >= 0, got {eps_trunc}")
    norms = f.block_norms()
    removed = np.zeros_like(norms)
    keep = [np.ones(e.size, dtype=bool) for e in f.eigenvalues]

    candidates = [
        (abs(lam) * norms[r], r, m)
        for r, evals in enumerate(f.eigenvalues)
        for m, lam in enumerate(evals)
    ]
    candidates.sort()

    bound = f.truncation_error_bound
    base = f.truncation_error_bound
    for _, r, m in candidates:
        trial = removed.copy()
        trial[r] += abs(f.eigenvalues[r][m])
        trial_bound = base + _removal_bound(norms, trial)
        if trial_bound >= eps_trunc:
            break
        removed = trial
        bound = trial_bound
        keep[r][m] = False

    out = FactorizedHamiltonian(n_orbitals=f.n_orbitals, truncation_error_bound=bound)
    for r in range(f.rank_R):
        if not keep[r].any():
            continue
        evals = f.eigenvalues[r][keep[r]]
        evecs = f.eigenvectors[r][:, keep[r]]
        out.l_matrices.append((evecs * evals) @ evecs.T)
        out.eigenvalues.append(evals)
        out.eigenvectors.append(evecs)
    out.alpha = compute_alpha(out, t)
    return out


def reconstruction_error(f: FactorizedHamiltonian, h: TwoElectronTensor | np.ndarray) -> tuple[float, float]:
    """(max-abs, Frobenius) deviation between the factorization and h

    Raises:
        ValidationError: Orbital counts differ
    """
    values = h.values if isinstance(h, TwoElectronTensor) else np.asarray(h, dtype=float)
    if values.shape != (f.n_orbitals,) * 4:
        raise ValidationError(f"tensor shape {values.shape} does not match N={f.n_orbitals}")
    diff = f.reconstruct() - values
    return float(np.max(np.abs(diff), initial=0.0)), float(np.linalg.norm(diff))


def synthetic_tensor(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Σ_r G_r ⊗ G_r over random symmetric G_r, a valid PSD test tensor"""
    h = np.zeros((n, n, n, n))
    for _ in range(rank):
        g = rng.normal(size=(n, n))
        g = 0.5 * (g + g.T)
        h += np.einsum("ij,kl->ijkl", g, g)
    return h

