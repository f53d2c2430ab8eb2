"""Intermediate error maxima, phase errors and the error in uniformity.

For an interpolant with nodes ``x_1 < ... < x_{2n+1}`` the approximation
error has one local maximum ``eta_j`` on each of the 2n+2 subintervals
``[-1, x_1), (x_1, x_2), ..., (x_{2n+1}, 1]``. The spread of the values
``eps_j`` measures how far the interpolant is from equioscillation:
``delta = 1 - min(eps)/max(eps)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionNotMet
from .interpolation import NodeSet
from .numerics import BarycentricRational, approximation_error, phase_error_values

#: Sampled maxima below this level are not refined.
BELOW_PRECISION = 1e-15
#: Golden-section stops once the bracket is this fraction of the subinterval.
GOLDEN_TOL = 1e-3

_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True, eq=False)
class EquioscillationReport:
    eta: np.ndarray
    eps: np.ndarray
    phase: np.ndarray
    alternating: bool
    parity: int
    delta: float
    uniform_error: float
    below_precision: np.ndarray

    @property
    def any_below_precision(self):
        return bool(np.any(self.below_precision))


def delta_from_eps(eps):
    """Error in uniformity ``1 - min(eps)/max(eps)`` (0 for an all-zero array)."""
    eps = np.asarray(eps, dtype=float)
    top = np.max(eps)
    if top == 0:
        return 0.0
    return float(1.0 - np.min(eps) / top)


def alternation(phase):
    """``(alternating, parity)`` for a sequence of phase errors.

    Exact zeros match either sign. ``parity`` is the ``iota`` in
    ``sign(phase_j) = (-1)^(j + iota)`` with ``j`` counted from one.
    """
    sgn = np.sign(np.asarray(phase, dtype=float))
    j = np.arange(1, len(sgn) + 1)
    nz = np.flatnonzero(sgn)
    if len(nz) == 0:
        return True, 0
    parity = 0 if sgn[nz[0]] == (-1.0) ** j[nz[0]] else 1
    expected = (-1.0) ** (j + parity)
    return bool(np.all(sgn[nz] == expected[nz])), parity


def make_report(r, omega, eta, eps, below=None):
    eta = np.asarray(eta, dtype=float)
    eps = np.asarray(eps, dtype=float)
    phase = phase_error_values(r, omega, eta)
    alternating, parity = alternation(phase)
    if below is None:
        below = np.zeros(len(eps), dtype=bool)
    return EquioscillationReport(
        eta=eta, eps=eps, phase=phase, alternating=alternating, parity=parity,
        delta=delta_from_eps(eps), uniform_error=float(np.max(eps)),
        below_precision=np.asarray(below, dtype=bool),
    )


def maximize_on_intervals(f, a, b, samples=16, golden_tol=GOLDEN_TOL, floor=BELOW_PRECISION):
    """Maximize a vectorized function independently on each ``[a_i, b_i]``.

    Coarse equispaced sampling (endpoints included), golden-section search
    on the bracket around the best sample down to ``golden_tol`` times the
    interval length, then one parabolic step.
    Intervals whose sampled maximum is below ``floor`` keep the sample.

    Returns ``(argmax, max, below_floor)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    length = b - a
    u = np.linspace(0.0, 1.0, samples)
    grid = a[:, None] + length[:, None] * u[None, :]
    grid[:, -1] = b
    vals = f(grid.ravel()).reshape(grid.shape)
    k = np.argmax(vals, axis=1)
    rows = np.arange(len(a))
    best_x = grid[rows, k]
    best_f = vals[rows, k]
    below = best_f < floor
    active = np.flatnonzero(~below)
    if len(active) == 0:
        return best_x, best_f, below

    def consider(x, fx):
        better = fx > best_f[active]
        best_x[active[better]] = x[better]
        best_f[active[better]] = fx[better]

    lo = grid[active, np.maximum(k[active] - 1, 0)]
    hi = grid[active, np.minimum(k[active] + 1, samples - 1)]
    L = length[active]
    steps = max(0, math.ceil(math.log(golden_tol * (samples - 1) / 2) / math.log(_INV_PHI)))
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(steps):
        left = fc >= fd
        # maximum in [lo, d] when f(c) >= f(d)
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        c_new = hi - _INV_PHI * (hi - lo)
        d_new = lo + _INV_PHI * (hi - lo)
        probe = np.where(left, c_new, d_new)
        fp = f(probe)
        c_old, fc_old, d_old, fd_old = c, fc, d, fd
        c = np.where(left, c_new, d_old)
        fc = np.where(left, fp, fd_old)
        d = np.where(left, c_old, d_new)
        fd = np.where(left, fc_old, fp)
    consider(c, fc)
    consider(d, fd)

    aa, bb = a[active], b[active]
    h = 0.5 * golden_tol * L
    m = best_x[active]
    fm = best_f[active]
    xl = np.maximum(m - h, aa)
    xr = np.minimum(m + h, bb)
    fl, fr = f(xl), f(xr)
    consider(xl, fl)
    consider(xr, fr)
    # vertex of the parabola through (xl, fl), (m, fm), (xr, fr)
    p, q = (m - xl), (m - xr)
    num = p * p * (fm - fr) - q * q * (fm - fl)
    den = p * (fm - fr) - q * (fm - fl)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = m - 0.5 * num / den
    ok = np.isfinite(v) & (v >= xl) & (v <= xr)
    if ok.any():
        v = np.where(ok, v, m)
        consider(v, f(v))
    return best_x, best_f, below


def local_error_maxima(r: BarycentricRational, omega, nodes: NodeSet,
                       samples_per_interval=16) -> EquioscillationReport:
    """Locate ``eta_j`` and ``eps_j`` on the 2n+2 subintervals of ``nodes``.

    For symmetric node sets only the subintervals right of zero are
    searched and the rest are mirrored.
    """
    if samples_per_interval < 3:
        raise ValueError("samples_per_interval must be at least 3")
    x = nodes.nodes
    edges = np.concatenate([[-1.0], x, [1.0]])
    n = nodes.n

    def err(t):
        return approximation_error(r, omega, t)

    if nodes.symmetric:
        a, b = edges[n + 1:-1], edges[n + 2:]
        eta_h, eps_h, below_h = maximize_on_intervals(err, a, b, samples_per_interval)
        eta = np.concatenate([-eta_h[::-1], eta_h])
        eps = np.concatenate([eps_h[::-1], eps_h])
        below = np.concatenate([below_h[::-1], below_h])
    else:
        eta, eps, below = maximize_on_intervals(err, edges[:-1], edges[1:], samples_per_interval)
    return make_report(r, omega, eta, eps, below)


def phase_error(r: BarycentricRational, omega, x):
    """Phase error ``angle(r(ix) / exp(i omega x))`` in (-pi, pi]."""
    val = phase_error_values(r, omega, x)
    if np.ndim(x) == 0:
        return float(val)
    return val


def sandwich(report: EquioscillationReport):
    """Bounds ``(lower, upper)`` on the error of the unitary best approximant.

    ``lower = (1 - delta) * uniform_error = min(eps)`` and
    ``upper = uniform_error``; valid only for alternating reports with a
    non-maximal error.
    """
    if not report.alternating:
        raise PreconditionNotMet("phase error does not alternate at the maxima")
    if not report.uniform_error < 2:
        raise PreconditionNotMet("approximation error is maximal")
    return float(np.min(report.eps)), float(report.uniform_error)


def sampled_max_error(r: BarycentricRational, omega, count=20000, refine=True):
    """Uniform error on ``[-1, 1]`` for approximants without known nodes.

    Samples ``count`` equispaced points and refines every local maximum of
    the samples on its neighbouring cells.
    """
    g = np.linspace(-1.0, 1.0, count)
    e = approximation_error(r, omega, g)
    if not refine:
        return float(np.max(e))
    ext = np.concatenate([[-np.inf], e, [-np.inf]])
    peaks = np.flatnonzero((ext[1:-1] >= ext[:-2]) & (ext[1:-1] >= ext[2:]))
    top = peaks[e[peaks] >= 0.5 * np.max(e)]
    a = g[np.maximum(top - 1, 0)]
    b = g[np.minimum(top + 1, count - 1)]

    def f(t):
        return approximation_error(r, omega, t)

    _, vals, _ = maximize_on_intervals(f, a, b, samples=5, floor=0.0)
    return float(max(np.max(vals), np.max(e)))
