"""Utility functions and constants for Faultline"""

import math
import time
from contextlib import contextmanager


class Tolerances:
    """Numerical tolerances shared across modules"""
    SYMMETRY = 1e-10        # Tensor / matrix symmetry checks
    PSD_CLAMP = 1e-6        # Relative size of clampable negative eigenvalues
    RECONSTRUCTION = 1e-8   # Untruncated factorization round-trip
    ORACLE = 1e-9           # Dense-oracle residuals
    UNIT_NORM = 1e-12       # Unit-vector and state-norm checks
    PROBABILITY = 1e-12     # Branches below this are never sampled


class Limits:
    """Hard limits"""
    MAX_DENSE_QUBITS = 12     # 4096 amplitudes
    INTERLEAVE_WARNING = 5000


_quiet = False


def set_quiet(quiet: bool) -> None:
    """Silence status output (tables and errors are still printed)"""
    global _quiet
    _quiet = quiet


def status(message: str) -> None:
    """Print a status line unless quiet mode is on"""
    if not _quiet:
        print(message)


def warn(message: str) -> None:
    """Print a warning line unless quiet mode is on"""
    if not _quiet:
        print(f"⚠️  {message}")


def banner(title: str) -> None:
    """Print a section banner"""
    if not _quiet:
        print("\n" + "=" * 60)
        print(title)
        print("=" * 60)


def ceil_log2(n: int) -> int:
    """Smallest k with 2**k >= n (0 for n <= 1)

    Args:
        n: Positive integer

    Returns:
        Integer ceiling of log2(n)
    """
    if n <= 1:
        return 0
    return (int(n) - 1).bit_length()


def safe_ceil(x: float, rel: float = 1e-12) -> int:
    """Ceiling that ignores floating-point noise just above an integer

    Args:
        x: Value to round up
        rel: Relative slack below which x is treated as the integer under it

    Returns:
        Integer ceiling
    """
    return math.ceil(x - rel * max(1.0, abs(x)))


def format_sig(value: float, digits: int = 3) -> str:
    """Format a number with a fixed count of significant digits

    Args:
        value: Number to format
        digits: Significant digits

    Returns:
        String such as '20.1' or '6.43e+06'
    """
    if value == 0:
        return "0"
    rounded = float(f"{value:.{digits - 1}e}")
    magnitude = math.floor(math.log10(abs(rounded)))
    if -3 <= magnitude < 5:
        decimals = max(0, digits - 1 - magnitude)
        return f"{rounded:.{decimals}f}"
    return f"{rounded:.{digits - 1}e}"


@contextmanager
def timer(operation_name: str):
    """Context manager for timing operations

    Args:
        operation_name: Name of operation being timed

    Yields:
        None

    Example:
        with timer("Estimating 35 instances"):
            run_estimate(config)
    """
    start = time.time()
    yield
    elapsed = time.time() - start
    status(f"⏱️  {operation_name} took {elapsed:.2f}s")
