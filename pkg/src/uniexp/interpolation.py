"""Unitary rational interpolation of ``exp(i omega x)`` in 2n+1 real nodes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SmallestSingularValueNotIsolated
from .numerics import BarycentricRational, half_angle

#: Largest admissible ratio between the null-vector residual and the
#: next singular value.
GAP_RATIO = 0.1
#: Residual correction steps applied to an isolated null vector.
REFINE_STEPS = 2


@dataclass(frozen=True, eq=False)
class NodeSet:
    """Strictly increasing interpolation nodes in (-1, 1).

    A symmetric set satisfies ``x[n] == 0`` and ``x[j] == -x[2n-j]``
    exactly; build it from its positive half with :meth:`from_half`.
    """

    nodes: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        x = np.array(self.nodes, dtype=float)
        if x.ndim != 1 or len(x) % 2 != 1:
            raise ValueError("a node set holds 2n+1 nodes")
        if np.any(np.diff(x) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if x[0] <= -1 or x[-1] >= 1:
            raise ValueError("nodes must lie in the open interval (-1, 1)")
        if self.symmetric:
            n = len(x) // 2
            if x[n] != 0 or np.any(x[:n] != -x[:n:-1]):
                raise ValueError("symmetric node set is not mirrored around zero")
        x.setflags(write=False)
        object.__setattr__(self, "nodes", x)

    @classmethod
    def from_half(cls, positive):
        """Symmetric set ``(-p[::-1], 0, p)`` from the positive nodes ``p``."""
        p = np.asarray(positive, dtype=float)
        return cls(np.concatenate([-p[::-1], [0.0], p]), symmetric=True)

    @classmethod
    def from_points(cls, points, symmetric=None):
        """Canonical node set from points in any order.

        With ``symmetric=None`` the set is marked symmetric when the sorted
        points are exactly mirrored around zero.
        """
        x = np.sort(np.asarray(points, dtype=float))
        n = len(x) // 2
        mirrored = len(x) % 2 == 1 and x[n] == 0 and np.all(x[:n] == -x[:n:-1])
        if symmetric is None:
            symmetric = bool(mirrored)
        if symmetric:
            return cls.from_half(0.5 * (x[n + 1:] - x[:n][::-1]))
        return cls(x)

    @property
    def n(self):
        return len(self.nodes) // 2

    @property
    def half(self):
        """Positive nodes of a symmetric set."""
        return self.nodes[self.n + 1:]

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, NodeSet):
            return NotImplemented
        return self.symmetric == other.symmetric and np.array_equal(self.nodes, other.nodes)

    __hash__ = None


def _kernel(omega, t, s):
    # imaginary part of the Loewner entries after unitary row/column scaling;
    # the sine is formed in double-double so small entries keep full accuracy
    d = t[:, None] - s[None, :]
    sn, _ = half_angle(omega, s, t)
    return -sn / d


def _null_vector(A, gap_ratio=GAP_RATIO):
    """Right null vector of a wide matrix via SVD, with the gap check."""
    rows, cols = A.shape
    if rows == 0:
        v = np.zeros(cols, dtype=A.dtype)
        v[0] = 1.0
        return v
    u, sv, vh = np.linalg.svd(A, full_matrices=True)
    v = vh[-1].conj()
    residual = np.linalg.norm(A @ v)
    second = sv[cols - 2] if len(sv) >= cols - 1 else 0.0
    ratio = residual / second if second > 0 else np.inf
    if ratio > gap_ratio:
        raise SmallestSingularValueNotIsolated(ratio)
    if ratio <= GAP_RATIO and len(sv) == cols - 1:
        # residual correction orthogonal to v: the SVD bounds the residual
        # only normwise, two steps bring it to the rowwise rounding level
        for _ in range(REFINE_STEPS):
            d = vh[:-1].conj().T @ ((u.conj().T @ (A @ v)) / sv)
            v = v - d
            v = v / np.linalg.norm(v)
    return v


def _normalize(beta):
    k = np.argmax(np.abs(beta))
    return beta / beta[k] * np.abs(beta[k]) / np.max(np.abs(beta))


def _split(x, support):
    mask = np.zeros(len(x), dtype=bool)
    mask[support] = True
    return x[mask], x[~mask]


def build_interpolant(omega, nodes: NodeSet, method="auto", support=None,
                      gap_ratio=GAP_RATIO) -> BarycentricRational:
    """Rational interpolant ``r(i x_j) = exp(i omega x_j)`` for all 2n+1 nodes.

    The odd-indexed nodes (``x_1, x_3, ...`` counted from one) serve as
    support nodes; the others give the n rows of the Loewner matrix whose
    null vector holds the weights.

    ``method``:

    ``"loewner"``
        complex Loewner matrix ``(f(t_j) - f(s_k)) / (t_j - s_k)``.
    ``"structured"``
        the same matrix after scaling rows by ``exp(-i omega t_j / 2)/(2i)``
        and columns by ``exp(-i omega s_k / 2)``; it is real, and real null
        vectors ``b`` give weights ``b_k exp(-i omega s_k / 2)`` for which
        the interpolant is unitary by construction.
    ``"symmetric"``
        the structured system reduced to the positive half of a symmetric
        node set; the weights satisfy ``b(-s) = (-1)^n b(s)``.
    ``"auto"``
        ``"symmetric"`` for symmetric node sets, ``"structured"`` otherwise.

    ``support`` optionally overrides the support node indices (n+1 of them);
    not allowed with the symmetric method.

    :class:`SmallestSingularValueNotIsolated` is raised when the null-vector
    residual exceeds ``gap_ratio`` times the next singular value; pass
    ``gap_ratio=np.inf`` to accept the smallest singular vector regardless.
    """
    x = nodes.nodes
    n = nodes.n
    if not 0 < omega < (n + 1) * np.pi:
        raise DomainError(f"omega={omega} outside (0, (n+1)pi) for n={n}")
    if method == "auto":
        method = "symmetric" if nodes.symmetric and support is None else "structured"
    if support is None:
        support = np.arange(0, 2 * n + 1, 2)
    support = np.asarray(support)
    if len(support) != n + 1:
        raise ValueError("exactly n+1 support nodes are required")

    if method == "symmetric":
        if not nodes.symmetric or not np.array_equal(support, np.arange(0, 2 * n + 1, 2)):
            raise ValueError("symmetric method needs a symmetric node set and default support")
        s, beta = _symmetric_weights(omega, x, n, gap_ratio)
        return BarycentricRational.from_centered(s, beta, omega)
    elif method == "structured":
        s, t = _split(x, support)
        beta = _normalize(_null_vector(_kernel(omega, t, s), gap_ratio).real)
        return BarycentricRational.from_centered(s, beta, omega)
    elif method == "loewner":
        s, t = _split(x, support)
        fs, ft = np.exp(1j * omega * s), np.exp(1j * omega * t)
        L = (ft[:, None] - fs[None, :]) / (t[:, None] - s[None, :])
        w = _null_vector(L, gap_ratio)
        w = w / (w[np.argmax(np.abs(w))] / np.max(np.abs(w)))
        return BarycentricRational(s, w, fs, omega=omega)
    raise ValueError(f"unknown method {method!r}")


def _symmetric_weights(omega, x, n, gap_ratio=GAP_RATIO):
    s = x[0::2]
    t = x[1::2]
    rho = -1.0 if n % 2 else 1.0
    sp = s[s > 0]
    tp = t[t > 0]
    cols = [_kernel(omega, tp, sp) + rho * _kernel(omega, tp, -sp)]
    if n % 2 == 0:
        # zero is a support node; its column is not paired
        cols.insert(0, _kernel(omega, tp, np.zeros(1)))
    H = np.hstack(cols)
    half = _normalize(_null_vector(H, gap_ratio).real)
    if n % 2 == 0:
        beta = np.concatenate([rho * half[:0:-1], half])
    else:
        beta = np.concatenate([rho * half[::-1], half])
    return s, beta / np.max(np.abs(beta))
