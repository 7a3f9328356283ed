"""Fault-tolerant overhead model

Turns logical counts (n_T, n_L) into a code distance, a resource-state
generator (RSG) footprint and a run time under the sub-threshold scaling
ε_gate = A·exp(-B·d). Data qubits take 2d² RSGs each, magic-state factories
n_factories·c_distill·d², and every T gate costs d clock cycles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from .exceptions import ValidationError
from .utils import Limits

# Each 15-to-1 distillation level maps p -> 35 p^3
DISTILLATION_PREFACTOR = 35.0
MAX_DISTILLATION_LEVELS = 8


@dataclass(frozen=True)
class NoiseRegime:
    """Sub-threshold scaling parameters of one hardware regime"""
    label: str
    A: float
    B: float
    p_P: float = 0.0
    p_E: float = 0.0
    magic_input_error: float = 1e-3

    def __post_init__(self):
        if self.A <= 0 or self.B <= 0:
            raise ValidationError(f"regime '{self.label}': A and B must be positive")
        for key in ("p_P", "p_E", "magic_input_error"):
            if not 0 <= getattr(self, key) < 1:
                raise ValidationError(f"regime '{self.label}': {key} must be in [0, 1)")


REGIMES = {
    "high": NoiseRegime("high", A=0.4, B=1.1, p_P=9.4e-4, p_E=9.4e-3),
    "moderate": NoiseRegime("moderate", A=0.5, B=1.6, p_P=4.7e-4, p_E=4.7e-3),
    # halfway between the two presets
    "average": NoiseRegime("average", A=0.45, B=1.35, p_P=7.05e-4, p_E=7.05e-3),
}


def resolve_regime(name: str, custom: Optional[dict] = None) -> NoiseRegime:
    """Look up a regime, custom config entries first

    Raises:
        ValidationError: Unknown regime name or bad custom entry
    """
    custom = custom or {}
    if name in custom:
        entry = custom[name] or {}
        if not isinstance(entry, dict):
            raise ValidationError(f"regime '{name}' must be a mapping of A, B, p_P, p_E")
        try:
            values = {k: float(v) for k, v in entry.items() if k != "label"}
            base = REGIMES.get(name)
            if base is not None:
                return replace(base, **values)
            return NoiseRegime(label=name, **values)
        except (TypeError, ValueError) as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"regime '{name}': {e}") from e
    if name not in REGIMES:
        known = ", ".join(sorted(set(REGIMES) | set(custom)))
        raise ValidationError(f"unknown regime '{name}' (known: {known})")
    return REGIMES[name]


@dataclass(frozen=True)
class FtParams:
    """Architecture parameters"""
    eps_total: float = 1e-2
    f_rsg: float = 1e9
    interleave: int = 1
    n_factories: int = 2
    c_distill: float = 120.0
    data_share: float = 0.5

    def __post_init__(self):
        if min(self.eps_total, self.f_rsg, self.n_factories, self.c_distill) <= 0:
            raise ValidationError("overhead parameters must be positive")
        if self.interleave < 1:
            raise ValidationError(f"interleaving ratio must be >= 1, got {self.interleave}")
        if not 0 < self.data_share <= 1:
            raise ValidationError(f"data_share must be in (0, 1], got {self.data_share}")


@dataclass
class FtReport:
    """Distance, footprint and run time of one (instance, regime) pair"""
    regime: NoiseRegime
    n_T: float
    n_L: int
    d: int
    eps_gate: float
    n_distill: float
    n_rsg: int
    n_cycles: float
    t_algo: float
    msd_ratio: float
    interleave: int
    eps_total: float
    warnings: list[str] = field(default_factory=list)

    @property
    def t_algo_hours(self) -> float:
        return self.t_algo / 3600.0

    @property
    def idle_qubit_rsgs(self) -> int:
        return idle_qubit_footprint(self.d)


# ----------------------------------------------------------------------
# Closed forms
# ----------------------------------------------------------------------

def gate_budget(eps_total: float, n_T: float, n_L: float) -> float:
    """Tolerable error per logical gate, ε_total/(n_T·n_L)"""
    if min(eps_total, n_T, n_L) <= 0:
        raise ValidationError("gate_budget needs positive inputs")
    return eps_total / (n_T * n_L)


def code_distance(regime: NoiseRegime, eps_gate: float) -> int:
    """d = max(1, ⌈ln(A/ε_gate)/B⌉); 1 when ε_gate >= A"""
    if eps_gate <= 0:
        raise ValidationError(f"gate budget must be positive, got {eps_gate}")
    if eps_gate >= regime.A:
        return 1
    return max(1, math.ceil(math.log(regime.A / eps_gate) / regime.B))


def distillation_footprint(d: int, params: FtParams = FtParams()) -> float:
    """RSGs held by the factories, n_factories·c_distill·d²"""
    return params.n_factories * params.c_distill * d * d


def footprint(n_L: int, d: int, n_distill: float, interleave: int = 1) -> int:
    """⌈(2d²·n_L + n_distill)/L_intl⌉ RSGs"""
    if interleave < 1:
        raise ValidationError(f"interleaving ratio must be >= 1, got {interleave}")
    return math.ceil((2 * d * d * n_L + n_distill) / interleave)


def runtime(n_T: float, d: int, f_rsg: float = 1e9, interleave: int = 1) -> tuple[float, float]:
    """(n_cycles, seconds) with n_cycles = n_T·d·L_intl"""
    n_cycles = n_T * d * interleave
    return n_cycles, n_cycles / f_rsg


def idle_qubit_footprint(d: int) -> int:
    """RSGs that keep one logical qubit idling"""
    return d * d


def msd_ratio(n_L: int, d: int, params: FtParams = FtParams()) -> float:
    """Distillation share of the footprint (independent of d)"""
    n_distill = distillation_footprint(d, params)
    return n_distill / (2 * d * d * n_L + n_distill)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

def estimate_overhead(
    n_T: float,
    n_L: int,
    regime: NoiseRegime,
    params: FtParams = FtParams(),
    interleave: Optional[int] = None,
) -> FtReport:
    """Full overhead report for one set of logical counts

    The distance is chosen for the data share of the failure budget,
    ε_gate = data_share·ε_total/(n_T·n_L); the remainder is left to distillation.
    """
    interleave = params.interleave if interleave is None else interleave
    warnings = []
    if interleave < 1:
        raise ValidationError(f"interleaving ratio must be >= 1, got {interleave}")
    if interleave > Limits.INTERLEAVE_WARNING:
        warnings.append(f"interleaving ratio {interleave} is above {Limits.INTERLEAVE_WARNING}")

    eps_gate = params.data_share * gate_budget(params.eps_total, n_T, n_L)
    if eps_gate >= regime.A:
        warnings.append(f"gate budget {eps_gate:.3g} is above A = {regime.A}; distance 1 needs no protection")
    d = code_distance(regime, eps_gate)
    n_distill = distillation_footprint(d, params)
    n_cycles, t_algo = runtime(n_T, d, params.f_rsg, interleave)
    return FtReport(
        regime=regime,
        n_T=n_T,
        n_L=n_L,
        d=d,
        eps_gate=eps_gate,
        n_distill=n_distill,
        n_rsg=footprint(n_L, d, n_distill, interleave),
        n_cycles=n_cycles,
        t_algo=t_algo,
        msd_ratio=msd_ratio(n_L, d, params),
        interleave=interleave,
        eps_total=params.eps_total,
        warnings=warnings,
    )


@dataclass(frozen=True)
class TradeoffPoint:
    interleave: int
    n_rsg: int
    t_algo: float


def tradeoff_curve(
    n_T: float,
    n_L: int,
    regime: NoiseRegime,
    params: FtParams = FtParams(),
    interleave_values: Iterable[int] = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000),
) -> list[TradeoffPoint]:
    """Footprint against run time as the interleaving ratio varies

    Raises:
        ValidationError: An interleaving ratio outside [1, 5000]
    """
    points = []
    for value in interleave_values:
        value = int(value)
        if not 1 <= value <= Limits.INTERLEAVE_WARNING:
            raise ValidationError(f"interleaving ratio {value} outside [1, {Limits.INTERLEAVE_WARNING}]")
        report = estimate_overhead(n_T, n_L, regime, params, interleave=value)
        points.append(TradeoffPoint(value, report.n_rsg, report.t_algo))
    return points


def msd_ratio_grid(
    n_l_values: Sequence[int],
    n_t_values: Sequence[float],
    regime: NoiseRegime,
    params: FtParams = FtParams(),
) -> pd.DataFrame:
    """Distillation share over a grid of logical qubit and T counts

    Returns:
        DataFrame indexed by n_L with one column per n_T
    """
    grid = np.empty((len(n_l_values), len(n_t_values)))
    for i, n_l in enumerate(n_l_values):
        for j, n_t in enumerate(n_t_values):
            grid[i, j] = estimate_overhead(n_t, int(n_l), regime, params).msd_ratio
    return pd.DataFrame(grid, index=pd.Index(list(n_l_values), name="n_L"), columns=list(n_t_values))


@dataclass(frozen=True)
class MagicStateBudget:
    raw_error: float
    target_error: float
    levels: int
    output_error: float


def magic_state_budget(
    regime: NoiseRegime,
    n_T: float,
    n_L: int,
    params: FtParams = FtParams(),
) -> MagicStateBudget:
    """15-to-1 levels needed so the T states fit the distillation share

    The per-state target is (1 - data_share)·ε_total/n_T. n_L is accepted for
    symmetry with estimate_overhead; the magic budget does not depend on it.
    """
    if min(n_T, n_L) <= 0:
        raise ValidationError("magic_state_budget needs positive counts")
    share = 1.0 - params.data_share
    if share <= 0:
        raise ValidationError("data_share = 1 leaves no budget for magic states")
    target = share * params.eps_total / n_T
    p = regime.magic_input_error
    levels = 0
    while p > target:
        if levels == MAX_DISTILLATION_LEVELS:
            raise ValidationError(f"no distillation depth up to {levels} levels reaches {target:.3g}")
        p = DISTILLATION_PREFACTOR * p ** 3
        levels += 1
    return MagicStateBudget(regime.magic_input_error, target, levels, p)


def parallel_runtime(
    n_T: float,
    d: int,
    f_rsg: float = 1e9,
    interleave: int = 1,
    speedup: float = 1.0,
) -> tuple[float, float]:
    """Run time when magic states are consumed `speedup` at a time (capped at d)"""
    effective = min(max(1.0, speedup), float(d))
    n_cycles = math.ceil(n_T / effective) * d * interleave
    return n_cycles, n_cycles / f_rsg


def parallel_footprint(
    n_L: int,
    d: int,
    params: FtParams = FtParams(),
    speedup: float = 1.0,
    interleave: int = 1,
) -> int:
    """Footprint with m extra magic registers and m extra factories, m = ⌈speedup⌉ - 1"""
    effective = min(max(1.0, speedup), float(d))
    extra = math.ceil(effective) - 1
    n_distill = (params.n_factories + extra) * params.c_distill * d * d
    return footprint(n_L + extra, d, n_distill, interleave)
