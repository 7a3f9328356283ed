"""Tensor and one-body matrix files

Text form: first line N, then N^k whitespace-separated reals in row-major
order (k = 4 for tensors, 2 for one-body matrices). Binary form: 8-byte
little-endian unsigned N, then N^k little-endian binary64 values.
"""

from pathlib import Path

import numpy as np

from .exceptions import ValidationError

BINARY_SUFFIXES = (".bin", ".dat")


def _is_binary(path: Path, binary: bool | None) -> bool:
    return path.suffix.lower() in BINARY_SUFFIXES if binary is None else binary


def _read(path: str | Path, rank: int, binary: bool | None) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")

    if _is_binary(path, binary):
        raw = path.read_bytes()
        if len(raw) < 8:
            raise ValidationError(f"{path.name}: binary file is missing its size header")
        n = int(np.frombuffer(raw[:8], dtype="<u8")[0])
        body = raw[8:]
        if len(body) != 8 * n ** rank:
            raise ValidationError(f"{path.name}: expected {n ** rank} values for N={n}, got {len(body) / 8:g}")
        values = np.frombuffer(body, dtype="<f8").astype(float)
    else:
        tokens = path.read_text().split()
        if not tokens:
            raise ValidationError(f"{path.name}: empty file", line=1)
        try:
            n = int(tokens[0])
        except ValueError as e:
            raise ValidationError(f"{path.name}: first line must be the orbital count", line=1) from e
        try:
            values = np.array(tokens[1:], dtype=float)
        except ValueError as e:
            raise ValidationError(f"{path.name}: non-numeric value") from e
        if values.size != n ** rank:
            raise ValidationError(f"{path.name}: expected {n ** rank} values for N={n}, got {values.size}")
    if n < 1:
        raise ValidationError(f"{path.name}: orbital count must be positive")
    return values.reshape((n,) * rank)


def _write(path: str | Path, values: np.ndarray, rank: int, binary: bool | None) -> Path:
    path = Path(path)
    values = np.asarray(values, dtype=float)
    if values.ndim != rank or len(set(values.shape)) != 1:
        raise ValidationError(f"expected a rank-{rank} array with equal sides, got shape {values.shape}")
    n = values.shape[0]
    path.parent.mkdir(parents=True, exist_ok=True)
    if _is_binary(path, binary):
        path.write_bytes(np.array([n], dtype="<u8").tobytes() + values.astype("<f8").tobytes())
    else:
        body = "\n".join(" ".join(repr(float(v)) for v in row) for row in values.reshape(-1, n))
        path.write_text(f"{n}\n{body}\n")
    return path


def read_tensor(path: str | Path, binary: bool | None = None) -> np.ndarray:
    """Read an N×N×N×N tensor (binary when the suffix is .bin/.dat unless told otherwise)"""
    return _read(path, 4, binary)


def write_tensor(path: str | Path, values: np.ndarray, binary: bool | None = None) -> Path:
    return _write(path, values, 4, binary)


def read_one_body(path: str | Path, binary: bool | None = None) -> np.ndarray:
    return _read(path, 2, binary)


def write_one_body(path: str | Path, values: np.ndarray, binary: bool | None = None) -> Path:
    return _write(path, values, 2, binary)
