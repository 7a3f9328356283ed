"""Logical cost model for double-factorized qubitization

Counts T gates (Toffolis at toffoli_t_count T each, one layer of depth), T
depth and logical qubits for one walk step, then scales by the number of
phase-estimation repetitions. The (ε_Q, ε_P) split and the QROM λ values are
optimized for either the count volume V_n = n_L·n_T or the depth volume
V_D = n_L·D_T.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import expit, logit

from .exceptions import ValidationError
from .utils import ceil_log2, safe_ceil

MIN_COUNT = "min-count"
MIN_DEPTH_INDEPENDENT = "min-depth-independent"
MIN_DEPTH_CONTINGENT = "min-depth-contingent"
STRATEGIES = (MIN_COUNT, MIN_DEPTH_INDEPENDENT, MIN_DEPTH_CONTINGENT)

OBJECTIVE_VN = "vn"
OBJECTIVE_VD = "vd"
OBJECTIVES = (OBJECTIVE_VN, OBJECTIVE_VD)

ROTATION_LOOKUP = "rotation_lookup"
PREPARE_M = "prepare_M"
PREPARE_R = "prepare_R"

SPLIT_BOUNDS = (0.01, 0.99)

ROTATION_BY_COUNT = "count"
ROTATION_BY_VOLUME = "volume"
ROTATION_CHOICES = (ROTATION_BY_COUNT, ROTATION_BY_VOLUME)


# ----------------------------------------------------------------------
# Inputs
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MolecularInstance:
    """Factorization parameters of one molecule in one basis"""
    name: str
    basis: str
    N: int
    R: int
    M: int
    alpha: float

    def __post_init__(self):
        for key in ("N", "R", "M"):
            if int(getattr(self, key)) < 1:
                raise ValidationError(f"{self.label}: {key} must be >= 1")
        if not self.alpha > 0:
            raise ValidationError(f"{self.label}: alpha must be > 0")

    @property
    def label(self) -> str:
        return f"{self.name}/{self.basis}"


@dataclass(frozen=True)
class ErrorBudget:
    """Split of the total error between qubitization and phase estimation"""
    eps_total: float
    eps_Q: float
    eps_P: float
    pe_constant: float = 0.5

    def __post_init__(self):
        if min(self.eps_total, self.eps_Q, self.eps_P, self.pe_constant) <= 0:
            raise ValidationError("error budget entries must all be positive")
        if self.eps_Q + self.eps_P > self.eps_total * (1 + 1e-12):
            raise ValidationError(
                f"eps_Q + eps_P = {self.eps_Q + self.eps_P:g} exceeds eps_total = {self.eps_total:g}"
            )

    @classmethod
    def from_split(cls, eps_total: float, t: float, pe_constant: float = 0.5) -> ErrorBudget:
        """Budget with eps_Q = t·eps_total and eps_P = (1 - t)·eps_total"""
        return cls(eps_total, t * eps_total, (1.0 - t) * eps_total, pe_constant)

    @property
    def split(self) -> float:
        return self.eps_Q / self.eps_total


@dataclass(frozen=True)
class CostConstants:
    """Component constants of the walk-step model"""
    c_sel: int = 4
    c_ref: int = 16
    c_cmp: int = 16
    c_cmp_depth: int = 4
    c_sel_depth: int = 2
    c_ref_depth: int = 2
    c_anc: int = 3
    mu_cap: int = 32
    toffoli_t_count: int = 4
    rotation_t_per_bit: int = 4
    prepare_m_applications: int = 4
    prepare_r_applications: int = 2
    rotation_lambda: str = ROTATION_BY_COUNT

    def __post_init__(self):
        if self.rotation_lambda not in ROTATION_CHOICES:
            raise ValidationError(
                f"rotation_lambda must be one of {', '.join(ROTATION_CHOICES)}, got '{self.rotation_lambda}'"
            )

    @classmethod
    def from_dict(cls, values: Optional[dict]) -> CostConstants:
        """Build from a config section, ignoring unknown keys"""
        if not values:
            return cls()
        known = {}
        for key, value in values.items():
            if key not in cls.__dataclass_fields__:
                continue
            known[key] = str(value).strip().lower() if key == "rotation_lambda" else int(value)
        constants = cls(**known)
        bad = [k for k, v in asdict(constants).items() if isinstance(v, int) and v <= 0]
        if bad:
            raise ValidationError(f"cost constants must be positive: {', '.join(bad)}")
        return constants


DEFAULT_CONSTANTS = CostConstants()


@dataclass(frozen=True)
class QromSite:
    label: str
    K: int
    b: int


@dataclass(frozen=True)
class LambdaAssignment:
    """λ per QROM site, tagged with the strategy that chose it"""
    values: dict
    strategy: str = MIN_COUNT

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValidationError(f"unknown λ strategy '{self.strategy}'")
        for site, lam in self.values.items():
            if int(lam) < 1:
                raise ValidationError(f"λ for {site} must be >= 1, got {lam}")

    def __getitem__(self, site: str) -> int:
        return int(self.values[site])


# ----------------------------------------------------------------------
# Closed forms
# ----------------------------------------------------------------------

def _check_positive(**values) -> None:
    for key, value in values.items():
        if value < 1:
            raise ValidationError(f"{key} must be >= 1, got {value}")


def qrom_tcount(K: int, b: int, lam: int) -> int:
    """⌈K/λ⌉ + b·(λ - 1)"""
    _check_positive(K=K, b=b, lam=lam)
    return -(-K // lam) + b * (lam - 1)


def qrom_tdepth(K: int, lam: int) -> int:
    """⌈K/λ⌉ + ⌈log2 λ⌉, independent of the word size"""
    _check_positive(K=K, lam=lam)
    return -(-K // lam) + ceil_log2(lam)


def beta_bits(N: int, alpha: float, eps_Q: float) -> int:
    """Rotation angle bits ⌈5.652 + log2(N·α/ε_Q)⌉"""
    if min(N, alpha, eps_Q) <= 0:
        raise ValidationError("beta_bits needs positive inputs")
    return safe_ceil(5.652 + math.log2(N * alpha / eps_Q))


def keep_bits(alpha: float, eps_Q: float, cap: int = 32) -> int:
    """Keep-probability bits μ of the alias sampler, clamped to [1, cap]"""
    return min(cap, max(1, safe_ceil(math.log2(alpha / eps_Q))))


def pe_iterations(alpha: float, eps_P: float, P: float = 0.5) -> int:
    """Walk-operator repetitions ⌈α·π·P/ε_P⌉"""
    if min(alpha, eps_P, P) <= 0:
        raise ValidationError("pe_iterations needs positive inputs")
    return safe_ceil(alpha * math.pi * P / eps_P)


def qrom_sites(inst: MolecularInstance, eps_Q: float, constants: CostConstants = DEFAULT_CONSTANTS) -> list[QromSite]:
    """The three QROM sites of a walk step with their sizes and word lengths"""
    beta = beta_bits(inst.N, inst.alpha, eps_Q)
    mu = keep_bits(inst.alpha, eps_Q, constants.mu_cap)
    return [
        QromSite(ROTATION_LOOKUP, inst.M + inst.N, inst.N * beta),
        QromSite(PREPARE_M, inst.M, ceil_log2(inst.M) + mu),
        QromSite(PREPARE_R, inst.R, ceil_log2(inst.R) + mu),
    ]


# ----------------------------------------------------------------------
# λ strategies
# ----------------------------------------------------------------------

def min_count_lambda(K: int, b: int) -> int:
    """Exact minimizer of qrom_tcount over λ in [1, ⌈4√(K/b)⌉ + 16] ∩ [1, K]

    Ties go to the smaller λ.
    """
    _check_positive(K=K, b=b)
    hi = min(K, math.ceil(4 * math.sqrt(K / b)) + 16)
    lams = np.arange(1, hi + 1, dtype=np.int64)
    counts = -(-K // lams) + b * (lams - 1)
    return int(lams[np.argmin(counts)])


def min_depth_lambda(K: int, b: int, q_max: int) -> int:
    """Depth-minimizing λ whose ancilla block b·λ stays within q_max"""
    hi = max(1, min(K, q_max // b))
    lams = np.arange(1, hi + 1, dtype=np.int64)
    depths = -(-K // lams) + np.array([ceil_log2(int(lam)) for lam in lams])
    return int(lams[np.argmin(depths)])


def optimize_lambda_count(
    inst: MolecularInstance,
    budget: ErrorBudget,
    constants: CostConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    """Per-site min-count λ

    With constants.rotation_lambda == "volume" the rotation lookup instead
    takes the λ minimizing n_L·n_{T,Q}; the prepare sites never enter n_L, so
    their min-count λ already minimizes the volume.
    """
    sites = qrom_sites(inst, budget.eps_Q, constants)
    values = {s.label: min_count_lambda(s.K, s.b) for s in sites}
    if constants.rotation_lambda == ROTATION_BY_VOLUME:
        values[ROTATION_LOOKUP] = min_volume_rotation_lambda(inst, budget, values, constants)
    return LambdaAssignment(values, MIN_COUNT)


def min_volume_rotation_lambda(
    inst: MolecularInstance,
    budget: ErrorBudget,
    lambdas: dict,
    constants: CostConstants = DEFAULT_CONSTANTS,
) -> int:
    """Rotation-lookup λ minimizing the step volume n_L·n_{T,Q}

    Scans [1, ⌈4√(K/b)⌉ + 16] ∩ [1, K] with the other sites held at the
    given λ values. Ties go to the smaller λ.
    """
    site = next(s for s in qrom_sites(inst, budget.eps_Q, constants) if s.label == ROTATION_LOOKUP)
    hi = min(site.K, math.ceil(4 * math.sqrt(site.K / site.b)) + 16)
    best_lam, best_volume = 1, None
    for lam in range(1, hi + 1):
        trial = LambdaAssignment({**lambdas, ROTATION_LOOKUP: lam}, MIN_COUNT)
        step = qubitization_cost(inst, budget, trial, constants)
        volume = step.n_L * step.n_TQ
        if best_volume is None or volume < best_volume:
            best_lam, best_volume = lam, volume
    return best_lam


def _largest_block(sites: list[QromSite], counts: LambdaAssignment) -> int:
    return max(counts[s.label] * s.b for s in sites)


def optimize_lambda_depth_contingent(
    inst: MolecularInstance,
    budget: ErrorBudget,
    constants: CostConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    """Stretch every site to the largest min-count ancilla block

    Q_max is the largest λ·b over sites under the min-count assignment; each
    prepare site then takes λ_i = max(1, ⌊Q_max/b_i⌋), capped at K_i. The
    rotation lookup keeps its min-count λ, so n_L is unchanged.
    """
    sites = qrom_sites(inst, budget.eps_Q, constants)
    count = optimize_lambda_count(inst, budget, constants)
    q_max = _largest_block(sites, count)
    values = {s.label: min(s.K, max(1, q_max // s.b)) for s in sites}
    values[ROTATION_LOOKUP] = count[ROTATION_LOOKUP]
    return LambdaAssignment(values, MIN_DEPTH_CONTINGENT)


def optimize_lambda_depth_independent(
    inst: MolecularInstance,
    budget: ErrorBudget,
    constants: CostConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    """Each site minimizes its own depth within the Q_max ancilla block"""
    sites = qrom_sites(inst, budget.eps_Q, constants)
    q_max = _largest_block(sites, optimize_lambda_count(inst, budget, constants))
    return LambdaAssignment(
        {s.label: min_depth_lambda(s.K, s.b, q_max) for s in sites},
        MIN_DEPTH_INDEPENDENT,
    )


_OPTIMIZERS: dict[str, Callable[..., LambdaAssignment]] = {
    MIN_COUNT: optimize_lambda_count,
    MIN_DEPTH_INDEPENDENT: optimize_lambda_depth_independent,
    MIN_DEPTH_CONTINGENT: optimize_lambda_depth_contingent,
}


def assign_lambdas(
    inst: MolecularInstance,
    budget: ErrorBudget,
    strategy: str,
    constants: CostConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    if strategy not in _OPTIMIZERS:
        raise ValidationError(f"unknown λ strategy '{strategy}'")
    return _OPTIMIZERS[strategy](inst, budget, constants)


# ----------------------------------------------------------------------
# Walk step
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    """One subroutine of the walk step, cost per application"""
    label: str
    applications: int
    t_count: int
    t_depth: int

    @property
    def total_count(self) -> int:
        return self.applications * self.t_count

    @property
    def total_depth(self) -> int:
        return self.applications * self.t_depth


@dataclass
class QubitizationStep:
    """Cost of one walk step"""
    components: list[Component]
    n_L: int
    beta: int
    mu: int
    lambdas: LambdaAssignment

    @property
    def n_TQ(self) -> int:
        return sum(c.total_count for c in self.components)

    @property
    def D_TQ(self) -> int:
        return sum(c.total_depth for c in self.components)


def qubitization_cost(
    inst: MolecularInstance,
    budget: ErrorBudget,
    lambdas: LambdaAssignment,
    constants: CostConstants = DEFAULT_CONSTANTS,
) -> QubitizationStep:
    """Per-step T-count, T-depth and qubits under a given λ assignment

    Raises:
        ValidationError: A λ is missing or exceeds the size of its QROM
    """
    c = constants
    toff = c.toffoli_t_count
    N = inst.N
    beta = beta_bits(N, inst.alpha, budget.eps_Q)
    mu = keep_bits(inst.alpha, budget.eps_Q, c.mu_cap)
    sites = {s.label: s for s in qrom_sites(inst, budget.eps_Q, c)}
    for label, site in sites.items():
        if label not in lambdas.values:
            raise ValidationError(f"no λ given for {label}")
        if lambdas[label] > site.K:
            raise ValidationError(f"λ = {lambdas[label]} for {label} exceeds K = {site.K}")

    def qrom(label: str) -> tuple[int, int]:
        site, lam = sites[label], lambdas[label]
        return toff * qrom_tcount(site.K, site.b, lam), qrom_tdepth(site.K, lam)

    def prepare(label: str, applications: int) -> Component:
        count, depth = qrom(label)
        K = sites[label].K
        return Component(
            label,
            applications,
            count + c.c_cmp * mu + toff * ceil_log2(K),
            depth + c.c_cmp_depth * ceil_log2(mu) + 1,
        )

    lookup_count, lookup_depth = qrom(ROTATION_LOOKUP)
    components = [
        Component(ROTATION_LOOKUP, 2, lookup_count, lookup_depth),
        Component("basis_rotations", 4, 2 * (N - 1) * beta * c.rotation_t_per_bit, 2 * ceil_log2(N) * beta),
        Component("controlled_swaps", 4, toff * N, 1),
        prepare(PREPARE_M, c.prepare_m_applications),
        prepare(PREPARE_R, c.prepare_r_applications),
        Component(
            "select",
            1,
            c.c_sel * N + c.c_ref * ceil_log2(inst.M + N),
            c.c_sel_depth * ceil_log2(N) + c.c_ref_depth * ceil_log2(inst.M + N),
        ),
    ]
    n_l = N * beta * (1 + lambdas[ROTATION_LOOKUP]) + 2 * N + c.c_anc * safe_ceil(math.log2(N / budget.eps_Q))
    return QubitizationStep(components, n_l, beta, mu, lambdas)


# ----------------------------------------------------------------------
# Full estimate
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BreakdownRow:
    label: str
    applications: int
    t_count: int
    t_depth: int
    qubits: int
    share_percent: float


@dataclass
class CostReport:
    """Optimized logical resources of one instance"""
    instance: MolecularInstance
    objective: str
    budget: ErrorBudget
    step: QubitizationStep
    pe_iterations: int
    trace: list[tuple[float, float]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def n_T(self) -> int:
        return self.step.n_TQ * self.pe_iterations

    @property
    def D_T(self) -> int:
        return self.step.D_TQ * self.pe_iterations

    @property
    def n_L(self) -> int:
        return self.step.n_L

    @property
    def beta(self) -> int:
        return self.step.beta

    @property
    def lambdas(self) -> LambdaAssignment:
        return self.step.lambdas

    @property
    def components(self) -> list[Component]:
        return self.step.components

    @property
    def V_n(self) -> int:
        return self.n_L * self.n_T

    @property
    def V_D(self) -> int:
        return self.n_L * self.D_T

    @property
    def count_depth_ratio(self) -> float:
        return self.n_T / self.D_T

    @property
    def trace_length(self) -> int:
        return len(self.trace)

    def as_row(self) -> dict:
        """Row with the estimate CSV columns"""
        inst = self.instance
        return {
            "name": inst.name,
            "basis": inst.basis,
            "N": inst.N,
            "R": inst.R,
            "M": inst.M,
            "alpha": inst.alpha,
            "objective": self.objective,
            "eps_Q": self.budget.eps_Q,
            "eps_P": self.budget.eps_P,
            "beta": self.beta,
            "lambda_rot": self.lambdas[ROTATION_LOOKUP],
            "n_T": self.n_T,
            "D_T": self.D_T,
            "n_L": self.n_L,
            "V_n": self.V_n,
            "V_D": self.V_D,
        }


def volume_breakdown(report: CostReport | QubitizationStep) -> list[BreakdownRow]:
    """Share of the count volume per subroutine, repeated applications included

    Every component occupies all n_L qubits, so its volume share is its share
    of the step T-count.
    """
    components = report.components
    n_l = report.n_L
    total = sum(c.total_count for c in components)
    rows = []
    for c in components:
        share = 100.0 * c.total_count / total if total else 0.0
        rows.append(BreakdownRow(c.label, c.applications, c.t_count, c.t_depth, n_l, share))
    return rows


def _normalize_objective(objective: str) -> str:
    key = objective.strip().lower()
    if key not in OBJECTIVES:
        raise ValidationError(f"unknown objective '{objective}' (use Vn or VD)")
    return key


@dataclass
class _Trial:
    budget: ErrorBudget
    step: QubitizationStep
    iterations: int
    value: float


class _SplitSearch:
    """Objective over the logit of the split t = ε_Q/ε_total, memoized"""

    def __init__(self, evaluate: Callable[[float], _Trial]):
        self.evaluate = evaluate
        self.cache: dict[float, _Trial] = {}
        self.failures: list[str] = []
        self.lo, self.hi = logit(SPLIT_BOUNDS[0]), logit(SPLIT_BOUNDS[1])

    def trial(self, x: float) -> _Trial:
        x = float(min(self.hi, max(self.lo, x)))
        key = round(x, 12)
        if key not in self.cache:
            self.cache[key] = self.evaluate(float(expit(x)))
        return self.cache[key]

    def __call__(self, x: float) -> float:
        return self.trial(x).value

    def best(self) -> _Trial:
        return min(self.cache.values(), key=lambda t: (t.value, t.budget.eps_Q))

    def run(self, coarse_points: int = 97, local_points: int = 17) -> _Trial:
        """Coarse grid, golden-section refinement, then a local grid

        A refinement scipy refuses (flat or infeasible bracket) is recorded in
        failures and the local grid still runs.
        """
        xs = np.linspace(self.lo, self.hi, coarse_points)
        values = [self(x) for x in xs]
        i = int(np.argmin(values))
        spacing = xs[1] - xs[0]
        if 0 < i < coarse_points - 1:
            try:
                minimize_scalar(self, bracket=(xs[i - 1], xs[i], xs[i + 1]), method="golden", tol=1e-3)
            except (ValueError, RuntimeError) as e:
                self.failures.append(f"golden-section refinement skipped near t = {expit(xs[i]):.3f}: {e}")
        centre = float(logit(self.best().budget.split))
        for x in np.linspace(centre - spacing, centre + spacing, local_points):
            self(x)
        return self.best()


def total_cost(
    inst: MolecularInstance,
    eps_total: float = 1e-3,
    objective: str = OBJECTIVE_VN,
    constants: CostConstants = DEFAULT_CONSTANTS,
    pe_constant: float = 0.5,
    strategy: Optional[str] = None,
) -> CostReport:
    """Optimize the error split and λ strategy for one instance

    Vn minimizes n_L·n_T with min-count λ, the rotation lookup optionally
    volume-chosen (constants.rotation_lambda). VD minimizes n_L·D_T with
    depth-oriented λ (contingent by default) and only accepts splits whose
    qubit count equals the Vn optimum; the Vn split seeds its search.

    Args:
        inst: Molecular instance
        eps_total: Total error budget in Hartree
        objective: "vn" or "vd" (case-insensitive)
        constants: Component constants
        pe_constant: Phase-estimation constant P
        strategy: Override the λ strategy for the objective

    Returns:
        CostReport at the best split found, with the search trace
    """
    if eps_total <= 0:
        raise ValidationError(f"eps_total must be positive, got {eps_total}")
    objective = _normalize_objective(objective)
    if strategy is None:
        strategy = MIN_COUNT if objective == OBJECTIVE_VN else MIN_DEPTH_CONTINGENT

    vn_report = None
    if objective == OBJECTIVE_VD:
        vn_report = total_cost(inst, eps_total, OBJECTIVE_VN, constants, pe_constant)

    def evaluate(t: float) -> _Trial:
        budget = ErrorBudget.from_split(eps_total, t, pe_constant)
        lambdas = assign_lambdas(inst, budget, strategy, constants)
        step = qubitization_cost(inst, budget, lambdas, constants)
        iterations = pe_iterations(inst.alpha, budget.eps_P, pe_constant)
        if objective == OBJECTIVE_VN:
            value = float(step.n_L) * step.n_TQ * iterations
        elif step.n_L != vn_report.n_L:
            value = math.inf
        else:
            value = float(step.n_L) * step.D_TQ * iterations
        return _Trial(budget, step, iterations, value)

    search = _SplitSearch(evaluate)
    if vn_report is not None:
        search.trial(float(logit(vn_report.budget.split)))
    best = search.run()
    report = CostReport(
        instance=inst,
        objective="Vn" if objective == OBJECTIVE_VN else "VD",
        budget=best.budget,
        step=best.step,
        pe_iterations=best.iterations,
        trace=sorted((t.budget.split, t.value) for t in search.cache.values()),
    )
    if best.budget.split <= SPLIT_BOUNDS[0] * 1.001 or best.budget.split >= SPLIT_BOUNDS[1] * 0.999:
        report.notes.append(f"{inst.label}: optimal split sits at the search bound (t = {best.budget.split:.3f})")
    if strategy != MIN_COUNT:
        report.notes.append(f"{inst.label}: prepare QROMs use {strategy} λ values")
    if math.isinf(best.value):
        report.notes.append(f"{inst.label}: no split keeps the Vn qubit count under {strategy} λ values")
    report.notes.extend(f"{inst.label}: {failure}" for failure in search.failures)
    return report
