"""Main iteration for the unitary best approximant.

Start from nodes between Chebyshev and equispaced points, interpolate,
measure the intermediate maximal errors, correct the nodes and repeat
until the phase error alternates and the error in uniformity is small.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .equi_metrics import EquioscillationReport, local_error_maxima
from .errors import (
    DomainError, InterpolantConstructionFailed, InvalidCorrection, SmallestSingularValueNotIsolated,
)
from .interpolation import NodeSet, build_interpolant
from .node_correction import (
    BrasilParams, MaehlyVariant, Strategy, brasil_step, maehly_step, select_strategy,
)
from .numerics import BarycentricRational


class StrategyChoice(enum.Enum):
    COMBINED = "Combined"
    BRASIL_ONLY = "BrasilOnly"
    MAEHLY_ONLY = "MaehlyOnly"


@dataclass(frozen=True)
class BestApproxConfig:
    n: int
    omega: float
    tol_delta: float = 1e-6
    max_iter: int = 100
    strategy: StrategyChoice = StrategyChoice.COMBINED
    samples_per_interval: int = 16
    brasil: BrasilParams = field(default_factory=BrasilParams)
    allow_unisolated: bool = True

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        if not 0 < self.omega < (self.n + 1) * np.pi:
            raise DomainError(f"omega={self.omega} outside (0, (n+1)pi) for n={self.n}")
        if not 0 < self.tol_delta < 1:
            raise ValueError("tol_delta must lie in (0, 1)")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        if self.samples_per_interval < 3:
            raise ValueError("samples_per_interval must be at least 3")
        object.__setattr__(self, "strategy", StrategyChoice(self.strategy))


@dataclass(frozen=True)
class IterationRecord:
    uniform_error: float
    delta: float
    strategy_used: Strategy | None
    alternating: bool
    wall_time: float
    gap_isolated: bool = True


@dataclass
class ConvergenceTrace:
    records: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def deltas(self):
        return np.array([r.delta for r in self.records])

    @property
    def errors(self):
        return np.array([r.uniform_error for r in self.records])


class BestApproxResult(NamedTuple):
    rational: BarycentricRational
    report: EquioscillationReport
    trace: ConvergenceTrace
    nodes: NodeSet
    converged: bool

    @property
    def iterations(self):
        return len(self.trace)


def initial_nodes(n, omega) -> NodeSet:
    """Blend of Chebyshev zeros and equispaced points weighted by ``omega/((n+1)pi)``."""
    if not 0 < omega < (n + 1) * np.pi:
        raise DomainError(f"omega={omega} outside (0, (n+1)pi) for n={n}")
    xi = omega / ((n + 1) * np.pi)
    j = np.arange(n + 2, 2 * n + 2)
    theta = -np.cos((2 * j - 1) * np.pi / (2 * (2 * n + 1)))
    equi = -1.0 + j / (n + 1)
    return NodeSet.from_half((1 - xi) * theta + xi * equi)


def _stopped(report, tol):
    return report.alternating and report.uniform_error < 2 and report.delta < tol


def _correct(config, nodes, report):
    below = report.any_below_precision
    if config.strategy is StrategyChoice.BRASIL_ONLY:
        choice = Strategy.BRASIL
    else:
        choice = select_strategy(report, below)
        if config.strategy is StrategyChoice.MAEHLY_ONLY and choice is Strategy.BRASIL:
            # Maehly without its preconditions: bilinear is the more stable form
            choice = Strategy.MAEHLY_BILINEAR
    if choice is not Strategy.BRASIL:
        variant = (MaehlyVariant.BILINEAR if choice is Strategy.MAEHLY_BILINEAR
                   else MaehlyVariant.LOG_RATIO)
        try:
            return maehly_step(nodes, report, variant), choice
        except (InvalidCorrection, np.linalg.LinAlgError, ValueError):
            choice = Strategy.BRASIL
    return brasil_step(nodes, report.eps, config.brasil), choice


def _interpolate(config, nodes):
    """Interpolant and whether its null vector was numerically isolated.

    For large n and small errors the two smallest singular values can both
    sit at roundoff level; the smallest singular vector is then still used
    and the iteration recorded as not isolated.
    """
    try:
        return build_interpolant(config.omega, nodes), True
    except SmallestSingularValueNotIsolated:
        if not config.allow_unisolated:
            raise
        return build_interpolant(config.omega, nodes, gap_ratio=np.inf), False


def compute_best(config: BestApproxConfig, init: NodeSet | None = None) -> BestApproxResult:
    """Iterate interpolation, maxima search and node correction.

    Returns the first iterate meeting the stopping test. Without
    convergence the iterate with the smallest ``delta`` among those with
    alternating phase error is returned (any iterate if none alternates).
    """
    nodes = initial_nodes(config.n, config.omega) if init is None else init
    if nodes.n != config.n:
        raise ValueError(f"initial nodes have n={nodes.n}, expected {config.n}")
    trace = ConvergenceTrace()
    best = None
    for it in range(config.max_iter):
        t0 = time.perf_counter()
        try:
            r, isolated = _interpolate(config, nodes)
        except Exception as exc:
            raise InterpolantConstructionFailed(it, exc) from exc
        report = local_error_maxima(r, config.omega, nodes, config.samples_per_interval)
        key = (not report.alternating, report.delta)
        if best is None or key < best[0]:
            best = (key, r, report, nodes)
        if _stopped(report, config.tol_delta):
            trace.records.append(IterationRecord(report.uniform_error, report.delta, None,
                                                 report.alternating, time.perf_counter() - t0,
                                                 isolated))
            return BestApproxResult(r, report, trace, nodes, True)
        new_nodes, used = _correct(config, nodes, report)
        trace.records.append(IterationRecord(report.uniform_error, report.delta, used,
                                             report.alternating, time.perf_counter() - t0,
                                             isolated))
        nodes = new_nodes
    _, r, report, nodes = best
    return BestApproxResult(r, report, trace, nodes, False)


def restart(config: BestApproxConfig, previous_nodes: NodeSet) -> BestApproxResult:
    """Warm start from previously computed nodes."""
    if previous_nodes.n != config.n:
        raise ValueError(f"previous nodes have n={previous_nodes.n}, expected {config.n}")
    return compute_best(config, init=previous_nodes)
