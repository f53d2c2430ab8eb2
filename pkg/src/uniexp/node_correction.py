"""Interpolation node corrections.

Three strategies move the 2n+1 interpolation nodes so that the
intermediate maximal errors ``eps_j`` become equal: a re-scaling of the
subinterval lengths (BRASIL), and Maehly's second method either through its
dense linear system or through a direct O(n^2) solution formula.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .equi_metrics import EquioscillationReport
from .errors import InvalidCorrection
from .interpolation import NodeSet

#: Above this degree the direct formula replaces the dense solve.
DIRECT_MIN_N = 9
#: Error in uniformity at which the right-hand side switches to the log ratio.
BILINEAR_DELTA = 0.1
#: Errors this close to 2 are treated as maximal.
MAXIMAL_ERROR = 2 - 1e-12


@dataclass(frozen=True)
class BrasilParams:
    kappa: float = 2.2
    sigma_max: float = 0.1

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if not 0 < self.sigma_max < 1:
            raise ValueError("sigma_max must lie in (0, 1)")


class MaehlyVariant(enum.Enum):
    LOG_RATIO = "log_ratio"
    BILINEAR = "bilinear"


class Strategy(enum.Enum):
    BRASIL = "Brasil"
    MAEHLY_BILINEAR = "MaehlyBilinear"
    MAEHLY_LOG_RATIO = "MaehlyLogRatio"


def _mirrored(eps, eta=None):
    eps = np.asarray(eps)
    if np.any(eps != eps[::-1]):
        return False
    return eta is None or bool(np.all(np.asarray(eta) == -np.asarray(eta)[::-1]))


def _finish(nodes: NodeSet, x, mirrored):
    """Validate corrected nodes; keep a symmetric set symmetric for mirrored data."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(np.diff(x) <= 0) or x[0] <= -1 or x[-1] >= 1:
        raise InvalidCorrection("corrected nodes are unordered or leave (-1, 1)")
    if nodes.symmetric and mirrored:
        n = nodes.n
        return NodeSet.from_half(0.5 * (x[n + 1:] - x[:n][::-1]))
    return NodeSet(x)


def brasil_step(nodes: NodeSet, eps, params: BrasilParams = BrasilParams()) -> NodeSet:
    """Re-scale subinterval lengths by ``(1 - sigma)^gamma_k``.

    Subintervals with errors above the mean shrink and those below grow.
    The normalized cumulative lengths are mapped back to ``(-1, 1)``.
    """
    eps = np.asarray(eps, dtype=float)
    x = nodes.nodes
    n = nodes.n
    if len(eps) != 2 * n + 2:
        raise ValueError("eps must hold 2n+2 values")
    if np.any(eps < 0) or not np.any(eps > 0):
        raise ValueError("eps must be nonnegative and not all zero")
    mean = np.mean(eps)
    gbar = np.max(np.abs(eps - mean))
    if gbar == 0:
        return nodes
    sigma = min(params.sigma_max, params.kappa * gbar / (n * mean))
    gamma = (eps - mean) / gbar
    edges = np.concatenate([[-1.0], x, [1.0]])
    lengths = (1 - sigma) ** gamma * np.diff(edges)
    cum = np.cumsum(lengths)
    return _finish(nodes, -1.0 + 2.0 * cum[:-1] / cum[-1], _mirrored(eps))


def _check_report(report: EquioscillationReport):
    eps = np.asarray(report.eps, dtype=float)
    if not report.alternating:
        raise InvalidCorrection("phase error does not alternate")
    if not report.uniform_error < 2:
        raise InvalidCorrection("approximation error is maximal")
    if np.any(eps <= 0):
        raise InvalidCorrection("intermediate errors must be positive")
    return eps


def system_rhs(eps, variant: MaehlyVariant):
    """Right-hand side ``b_j`` relative to ``eps_1``, j = 2..2n+2."""
    e1, rest = eps[0], eps[1:]
    if variant is MaehlyVariant.LOG_RATIO:
        return np.log(rest / e1)
    return 2 * (rest - e1) / (rest + e1)


def direct_rhs(eps, variant: MaehlyVariant):
    """Right-hand side ``b_j`` relative to the geometric mean, j = 1..2n+2."""
    gmean = np.exp(np.mean(np.log(eps)))
    if variant is MaehlyVariant.LOG_RATIO:
        return np.log(eps / gmean)
    return 2 * (eps - gmean) / (eps + gmean)


def maehly_system(x, eta):
    """Matrix ``M_jk = (eta_1 - eta_{j+1}) / ((eta_{j+1} - x_k)(eta_1 - x_k))``."""
    e1, e = eta[0], eta[1:]
    return (e1 - e)[:, None] / ((e[:, None] - x[None, :]) * (e1 - x)[None, :])


def solve_system(x, eta, b):
    return scipy.linalg.solve(maehly_system(x, eta), b)


def _log_prod(diff, mask=None):
    """Sign and log-magnitude of row products, skipping masked entries."""
    if mask is not None:
        diff = np.where(mask, 1.0, diff)
    sign = np.prod(np.sign(diff), axis=1)
    return sign, np.sum(np.log(np.abs(diff)), axis=1)


def solve_direct(x, eta, b):
    """Closed-form solution of ``sum_k dx_k/(eta_l - x_k) + c = b_l``, l = 1..2n+2.

    Partial fractions give ``dx_j`` as a Lagrange interpolation sum over
    the ``eta_l``; products run in the log domain.
    """
    m, p = len(x), len(eta)
    xe = x[:, None] - eta[None, :]
    sa, la = _log_prod(xe)
    sx, lx = _log_prod(x[:, None] - x[None, :], np.eye(m, dtype=bool))
    ex = eta[:, None] - x[None, :]
    sq, lq = _log_prod(ex)
    se, le = _log_prod(eta[:, None] - eta[None, :], np.eye(p, dtype=bool))
    sign_j = sa * sx
    log_j = la - lx
    sign_l = sq * se
    log_l = lq - le
    terms = (b[None, :] / xe) * sign_l[None, :] * np.exp(log_j[:, None] + log_l[None, :])
    return sign_j * np.sum(terms, axis=1)


def maehly_system_step(nodes: NodeSet, report: EquioscillationReport,
                       variant: MaehlyVariant = MaehlyVariant.LOG_RATIO) -> NodeSet:
    """Maehly correction by a dense LU solve of the (2n+1)-square system."""
    eps = _check_report(report)
    x = nodes.nodes
    dx = solve_system(x, np.asarray(report.eta, dtype=float), system_rhs(eps, variant))
    return _finish(nodes, x + dx, _mirrored(eps, report.eta))


def maehly_direct_step(nodes: NodeSet, report: EquioscillationReport,
                       variant: MaehlyVariant = MaehlyVariant.LOG_RATIO) -> NodeSet:
    """Maehly correction from the direct solution formula, O(n^2)."""
    eps = _check_report(report)
    x = nodes.nodes
    dx = solve_direct(x, np.asarray(report.eta, dtype=float), direct_rhs(eps, variant))
    return _finish(nodes, x + dx, _mirrored(eps, report.eta))


def maehly_step(nodes: NodeSet, report: EquioscillationReport, variant: MaehlyVariant) -> NodeSet:
    """Direct formula for ``n >= DIRECT_MIN_N``, dense solve below."""
    if nodes.n >= DIRECT_MIN_N:
        return maehly_direct_step(nodes, report, variant)
    return maehly_system_step(nodes, report, variant)


def select_strategy(report: EquioscillationReport, below_precision: bool) -> Strategy:
    if not report.alternating or report.uniform_error >= MAXIMAL_ERROR or below_precision:
        return Strategy.BRASIL
    if report.delta >= BILINEAR_DELTA:
        return Strategy.MAEHLY_BILINEAR
    return Strategy.MAEHLY_LOG_RATIO
