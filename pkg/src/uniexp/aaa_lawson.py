"""AAA and AAA-Lawson approximation of ``exp(i omega x)`` over real test nodes.

Both run in centered coordinates: scaling rows by ``exp(-i omega x/2)``
and columns by ``exp(i omega s/2)`` turns the Loewner matrix into the real
matrix ``2i sin(omega (x - s)/2)/(x - s)``. Its singular vectors are real,
and the resulting approximants are unitary by construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .equi_metrics import phase_error
from .errors import Breakdown
from .interpolation import NodeSet
from .numerics import BarycentricRational, _centered_form, approximation_error, half_angle


class TestNodeKind(enum.Enum):
    __test__ = False

    EQUISPACED = "equispaced"
    ADAPTIVE = "adaptive"


@dataclass(frozen=True, eq=False)
class TestNodeSet:
    nodes: np.ndarray
    kind: TestNodeKind = TestNodeKind.EQUISPACED

    # not a test class
    __test__ = False

    def __post_init__(self):
        x = np.array(self.nodes, dtype=float)
        if x.ndim != 1 or len(x) < 2:
            raise ValueError("at least two test nodes are required")
        if np.any(np.diff(x) <= 0):
            raise ValueError("test nodes must be strictly increasing")
        if x[0] < -1 or x[-1] > 1:
            raise ValueError("test nodes must lie in [-1, 1]")
        x.setflags(write=False)
        object.__setattr__(self, "nodes", x)

    @classmethod
    def equispaced(cls, count):
        return cls(np.linspace(-1.0, 1.0, int(count)), TestNodeKind.EQUISPACED)

    def check_degree(self, n):
        if len(self.nodes) < 2 * (2 * n + 2):
            raise ValueError(f"{len(self.nodes)} test nodes are too few for degree {n}")

    def __len__(self):
        return len(self.nodes)


@dataclass
class LawsonState:
    weights: np.ndarray
    iteration: int = 0
    error_history: list = field(default_factory=list)


def _sin_cos(omega, x, s):
    """``sin`` and ``cos`` of ``omega (x - s)/2`` for all pairs."""
    sn, cs = half_angle(omega, s, x)
    return -sn, cs


def _smallest_right_singular(A):
    try:
        _, _, vh = np.linalg.svd(A, full_matrices=A.shape[0] < A.shape[1])
    except np.linalg.LinAlgError as exc:
        raise Breakdown(f"SVD failed: {exc}") from exc
    v = vh[-1]
    if not np.all(np.isfinite(v)):
        raise Breakdown("non-finite singular vector")
    return v


def _sign_fix(v):
    return v if v[np.argmax(np.abs(v))] > 0 else -v


def aaa(omega, tests: TestNodeSet, n) -> BarycentricRational:
    """Greedy AAA with exactly ``n + 1`` support nodes.

    Each step adds the test node of largest current error (smallest index
    on ties) and recomputes the weights as the smallest right singular
    vector of the Loewner matrix over the remaining test nodes.
    """
    tests.check_degree(n)
    x = tests.nodes
    support = np.zeros(len(x), dtype=bool)
    # initial approximant: the mean of the samples
    f = np.exp(1j * omega * x)
    resid = np.abs(f - np.mean(f))
    r = None
    for _ in range(n + 1):
        resid = np.where(support, -1.0, resid)
        j = int(np.argmax(resid))
        support[j] = True
        s = x[support]
        rest = x[~support]
        if len(rest) == 0:
            raise Breakdown("no test nodes left")
        sn, _ = _sin_cos(omega, rest, s)
        K = sn / (rest[:, None] - s[None, :])
        c = _sign_fix(_smallest_right_singular(K))
        if np.any(c == 0):
            raise Breakdown("zero barycentric weight")
        r = BarycentricRational.from_centered(s, c, omega)
        resid = approximation_error(r, omega, x)
    return r


def _to_centered(q, p):
    """Centered weights and phase offsets from the real Lawson parameters.

    Numerator and denominator coefficients ``(q + ip)/2`` and ``(q - ip)/2``
    (in centered coordinates) give ``c = |q + ip|/2`` and
    ``psi = 2 arg(q + ip)``.
    """
    return 0.5 * np.hypot(q, p), 2.0 * np.arctan2(p, q)


def lawson(r: BarycentricRational, omega, tests: TestNodeSet, iters):
    """Lawson iteration on the support nodes of ``r``.

    Minimizes the weighted linearized residual ``N(x) - f(x) D(x)`` over
    the test nodes, with free numerator and denominator coefficients, and
    multiplies the weights by the current error magnitudes after each step
    (renormalized to unit sum). Rows are divided by ``|D(x)|`` of the
    previous iterate so that the weighted residual tracks the error itself.

    The result no longer interpolates at the support nodes; their rows
    hold the limit of ``(x - s_k)`` times the residual.
    """
    s = r.support_nodes
    x = tests.nodes
    is_support = np.isin(x, s)
    wt = np.full(len(x), 1.0 / len(x))
    state = LawsonState(weights=wt)
    if iters == 0:
        return r, state
    m = len(s)
    rest = ~is_support
    sn, cs = _sin_cos(omega, x[rest], s)
    inv = 1.0 / (x[rest][:, None] - s[None, :])
    S, C = sn * inv, cs * inv
    k = np.searchsorted(x, s)
    c, psi = _centered_form(r, omega)
    c = np.real(c)
    q, p = 2 * c * np.cos(psi / 2), 2 * c * np.sin(psi / 2)
    for it in range(iters):
        # |D(x)| in centered coordinates; at a support node the row is
        # (x - s_k) times the residual and the matching scale is |c_k|
        scale = np.empty(len(x))
        scale[rest] = 0.5 * np.hypot(C @ q + S @ p, S @ q - C @ p)
        scale[k] = 0.5 * np.hypot(q, p)
        root = np.sqrt(wt) / scale
        A = np.zeros((len(x), 2 * m))
        A[rest] = root[rest][:, None] * np.hstack([S, -C])
        A[k, m + np.arange(m)] = -root[k]
        v = _smallest_right_singular(A)
        q, p = v[:m], v[m:]
        c, psi = _to_centered(q, p)
        if np.any(c == 0):
            raise Breakdown("zero barycentric weight")
        r = BarycentricRational.from_centered(s, c, omega, phase_offsets=psi)
        err = approximation_error(r, omega, x)
        state.error_history.append(float(np.max(err)))
        wt = wt * err
        total = np.sum(wt)
        if not total > 0:
            break
        wt = wt / total
        state.weights = wt
        state.iteration = it + 1
    return r, state


def aaa_lawson(omega, tests: TestNodeSet, n, iters):
    return lawson(aaa(omega, tests, n), omega, tests, iters)


def adaptive_test_nodes(omega, n, rounds=4, lawson_iters=20) -> TestNodeSet:
    """Simplified adaptive test nodes.

    Starts from ``10 (2n+2)`` equispaced nodes. Each round fits AAA plus a
    short Lawson run, finds the local error maxima over the current nodes
    and inserts geometrically clustered points around each of them. The
    total count stays below twice the initial count.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    count = 10 * (2 * n + 2)
    x = np.linspace(-1.0, 1.0, count)
    budget = count
    per_peak = 4
    for _ in range(rounds):
        tests = TestNodeSet(x, TestNodeKind.ADAPTIVE)
        r, _ = aaa_lawson(omega, tests, n, lawson_iters)
        e = approximation_error(r, omega, x)
        ext = np.concatenate([[-np.inf], e, [-np.inf]])
        peaks = np.flatnonzero((ext[1:-1] > ext[:-2]) & (ext[1:-1] >= ext[2:]))
        peaks = peaks[np.argsort(-e[peaks], kind="stable")]
        quota = min(len(peaks), (budget // rounds) // (2 * per_peak))
        new = []
        for i in peaks[:quota]:
            lo = x[max(i - 1, 0)]
            hi = x[min(i + 1, len(x) - 1)]
            for k in range(1, per_peak + 1):
                h = 0.5 ** k
                new.append(x[i] - h * (x[i] - lo))
                new.append(x[i] + h * (hi - x[i]))
        x = np.unique(np.clip(np.concatenate([x, new]), -1.0, 1.0))
    return TestNodeSet(x, TestNodeKind.ADAPTIVE)


def detect_interpolation_nodes(r: BarycentricRational, omega, grid_factor=50, xtol=1e-12):
    """Interpolation nodes of ``r`` as the sign changes of its phase error.

    Returns a :class:`NodeSet` when exactly ``2n+1`` continuous sign
    changes are found in ``(-1, 1)``, otherwise ``None``. Jumps of the
    principal argument across ``+-pi`` do not count.
    """
    n = r.degree
    g = np.linspace(-1.0, 1.0, grid_factor * (2 * n + 2) + 1)
    ph = phase_error(r, omega, g)
    roots = list(g[1:-1][ph[1:-1] == 0])
    a, b = ph[:-1], ph[1:]
    cross = (a * b < 0) & (np.abs(a - b) < np.pi)
    for i in np.flatnonzero(cross):
        roots.append(scipy.optimize.brentq(lambda t: phase_error(r, omega, t), g[i], g[i + 1],
                                           xtol=xtol))
    roots = np.unique(roots)
    if len(roots) != 2 * n + 1:
        return None
    try:
        return NodeSet(roots)
    except ValueError:
        return None
