"""Barycentric rational functions on the imaginary axis.

A degree-n rational function is stored through m = n + 1 real support
nodes ``s_k``, complex weights ``w_k`` and support values ``f_k``::

    r(z) = sum_k w_k f_k / (z - i s_k)  /  sum_k w_k / (z - i s_k)

so that ``r(i s_k) = f_k``. On the imaginary axis the common factor ``i``
cancels and all evaluation reduces to real differences ``x - s_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

#: Value returned by :func:`evaluate` where the denominator sum vanishes.
POLE = complex(np.inf, 0.0)

DEGENERACY_THRESHOLD = 1e-14


@dataclass(frozen=True, eq=False)
class BarycentricRational:
    """(n, n)-rational function in barycentric form with nodes on ``i[-1, 1]``.

    Interpolants of ``exp(i omega x)`` also carry ``omega`` and the
    centered weights ``c_k = w_k exp(i omega s_k / 2)``, which are real for
    unitary interpolants. Error evaluation against the same ``omega`` then
    works from ``c_k`` and never forms the large phases ``omega s_k``.
    Unitary approximants that do not interpolate at their support nodes
    additionally store ``psi_k`` with ``f_k = exp(i (omega s_k + psi_k))``.
    """

    support_nodes: np.ndarray
    weights: np.ndarray
    support_values: np.ndarray
    omega: float | None = None
    centered: np.ndarray | None = None
    phase_offsets: np.ndarray | None = None
    near_degenerate: bool = field(init=False)

    def __post_init__(self):
        s = np.asarray(self.support_nodes, dtype=float)
        w = np.asarray(self.weights, dtype=complex)
        f = np.asarray(self.support_values, dtype=complex)
        if not (s.ndim == w.ndim == f.ndim == 1 and len(s) == len(w) == len(f)):
            raise ValueError("support_nodes, weights and support_values must be 1-d of equal length")
        if len(s) == 0:
            raise ValueError("at least one support node is required")
        if np.any(np.diff(s) <= 0):
            raise ValueError("support nodes must be strictly increasing")
        if np.any(w == 0):
            raise ValueError("weights must be nonzero")
        arrays = [("support_nodes", s), ("weights", w), ("support_values", f)]
        if self.centered is not None:
            if self.omega is None:
                raise ValueError("centered weights require omega")
            arrays.append(("centered", np.array(self.centered)))
            if self.phase_offsets is not None:
                arrays.append(("phase_offsets", np.array(self.phase_offsets, dtype=float)))
        for name, arr in arrays:
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        wmax = np.max(np.abs(w))
        object.__setattr__(self, "near_degenerate",
                           bool(np.any(np.abs(w) < DEGENERACY_THRESHOLD * wmax)))

    @classmethod
    def from_centered(cls, support_nodes, centered, omega, phase_offsets=None):
        """Approximant of ``exp(i omega x)`` from its centered weights."""
        s = np.asarray(support_nodes, dtype=float)
        c = np.asarray(centered)
        phase = omega * s
        if phase_offsets is not None:
            phase = phase + np.asarray(phase_offsets, dtype=float)
        return cls(s, c * np.exp(-0.5j * phase), np.exp(1j * phase),
                   omega=omega, centered=c, phase_offsets=phase_offsets)

    @property
    def degree(self):
        return len(self.support_nodes) - 1

    def __call__(self, z):
        return evaluate(self, z)

    def on_axis(self, x):
        """Values ``r(i x)`` for real ``x``."""
        return evaluate_imag(self, x)


@dataclass(frozen=True)
class PoleZeroSet:
    poles: np.ndarray
    zeros: np.ndarray
    degenerate: bool = False


def _barycentric(diff, w, f, exact):
    """Barycentric quotient for an (len(z), m) array of differences."""
    if len(w) == 1:
        return np.full(diff.shape[0], f[0], dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = np.where(exact, 1.0, 1.0 / np.where(exact, 1.0, diff))
        num = c @ (w * f)
        den = c @ w
        out = num / den
    hit = exact.any(axis=1)
    if hit.any():
        out[hit] = f[exact[hit].argmax(axis=1)]
    out[(den == 0) & ~hit] = POLE
    return out


def _unitary_barycentric(diff, w, f, exact):
    with np.errstate(divide="ignore", invalid="ignore"):
        c = np.where(exact, 1.0, 1.0 / np.where(exact, 1.0, diff))
        den = c @ w
        out = np.conj(den) / den
    hit = exact.any(axis=1)
    if hit.any():
        out[hit] = f[exact[hit].argmax(axis=1)]
    out[(den == 0) & ~hit] = POLE
    return out


def evaluate(r: BarycentricRational, z):
    """Evaluate ``r`` at complex points ``z`` (scalar or array)."""
    zv = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    s = r.support_nodes
    exact = (zv.real[:, None] == 0) & (zv.imag[:, None] == s[None, :])
    diff = zv[:, None] - 1j * s[None, :]
    out = _barycentric(diff, r.weights, r.support_values, exact)
    if np.ndim(z) == 0:
        return complex(out[0])
    return out.reshape(np.shape(z))


def evaluate_imag(r: BarycentricRational, x):
    """Evaluate ``r(i x)`` for real ``x``.

    Uses ``r(ix) = sum w f/(x - s) / sum w/(x - s)``, which avoids forming
    complex differences. With real centered weights ``w_k f_k`` equals
    ``conj(w_k)``, so the numerator is formed as the conjugate of the
    denominator and ``|r(ix)| = 1`` holds to rounding.
    """
    xv = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    s = r.support_nodes
    diff = xv[:, None] - s[None, :]
    if r.centered is not None and np.isrealobj(r.centered) and len(s) > 1:
        out = _unitary_barycentric(diff, r.weights, r.support_values, diff == 0)
    else:
        out = _barycentric(diff, r.weights, r.support_values, diff == 0)
    if np.ndim(x) == 0:
        return complex(out[0])
    return out.reshape(np.shape(x))


def _centered_form(r, omega):
    """Centered weights and phase offsets ``psi_k`` relative to ``omega``.

    With ``f_k = exp(i (omega s_k + psi_k))`` the centered weights are
    ``w_k exp(i (omega s_k + psi_k) / 2)``.
    """
    s = r.support_nodes
    if r.centered is not None and r.omega == omega:
        psi = r.phase_offsets if r.phase_offsets is not None else np.zeros(len(s))
        return r.centered, psi
    psi = np.angle(r.support_values * np.exp(-1j * omega * s))
    return r.weights * np.exp(0.5j * (omega * s + psi)), psi


_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ah = _SPLIT * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLIT * b
    bh = bh - (bh - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def half_angle(omega, s, x, psi=None):
    """``sin`` and ``cos`` of ``(omega (s - x) + psi) / 2`` for all pairs.

    The angle is formed in double-double arithmetic and the rounding tail
    applied as a first-order correction, so the result is accurate to a
    few ulps even when ``omega |s - x|`` is large.
    """
    d_hi, d_lo = _two_sum(s[None, :], -x[:, None])
    h = 0.5 * omega
    a_hi, a_lo = _two_prod(h, d_hi)
    a_lo = a_lo + h * d_lo
    if psi is not None:
        a_hi, e = _two_sum(a_hi, np.broadcast_to(0.5 * psi, a_hi.shape))
        a_lo = a_lo + e
    sn, cs = np.sin(a_hi), np.cos(a_hi)
    return sn + a_lo * cs, cs - a_lo * sn


def relative_deviation(r: BarycentricRational, omega, x):
    """``E(x) = r(ix) exp(-i omega x) - 1`` without the large phase ``omega x``.

    Multiplying numerator and denominator of the barycentric quotient by
    ``exp(i omega x / 2)`` gives, with ``theta_k = omega (s_k - x) + psi_k``
    and centered weights ``c_k``::

        E(x) = sum c_k 2i sin(theta_k/2)/(x - s_k) / sum c_k exp(-i theta_k/2)/(x - s_k)

    Requires unimodular support values.
    """
    xv = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    s = r.support_nodes
    c, psi = _centered_form(r, omega)
    diff = xv[:, None] - s[None, :]
    exact = diff == 0
    sn, cs = half_angle(omega, s, xv, None if not np.any(psi) else psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(exact, 0.0, 1.0 / np.where(exact, 1.0, diff))
        num = (2j * sn * inv) @ c
        den = ((cs - 1j * sn) * inv) @ c
        out = num / den
    hit = exact.any(axis=1)
    if hit.any():
        out[hit] = np.expm1(1j * psi[exact[hit].argmax(axis=1)])
    if np.ndim(x) == 0:
        return complex(out[0])
    return out.reshape(np.shape(x))


def approximation_error(r: BarycentricRational, omega, x):
    """``|r(ix) - exp(i omega x)|``."""
    return np.abs(relative_deviation(r, omega, x))


def phase_error_values(r: BarycentricRational, omega, x):
    """Principal argument of ``r(ix) exp(-i omega x)``, in (-pi, pi]."""
    e = relative_deviation(r, omega, x)
    return np.arctan2(np.imag(e), 1.0 + np.real(e))


def unitarity_defect(r: BarycentricRational, grid) -> float:
    """``max | |r(ix)| - 1 |`` over the real grid."""
    vals = evaluate_imag(r, np.asarray(grid, dtype=float))
    return float(np.max(np.abs(np.abs(vals) - 1.0)))


def _arrowhead_roots(nodes, coeffs):
    m = len(nodes)
    E = np.zeros((m + 1, m + 1), dtype=complex)
    E[0, 1:] = coeffs
    E[1:, 0] = 1.0
    E[1:, 1:] = np.diag(nodes)
    B = np.eye(m + 1, dtype=complex)
    B[0, 0] = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = scipy.linalg.eigvals(E, B)
    return lam[np.isfinite(lam)]


def poles_zeros(r: BarycentricRational) -> PoleZeroSet:
    """Poles and zeros from the arrowhead generalized eigenvalue problems.

    Infinite eigenvalues are dropped; fewer than ``n`` finite poles or
    zeros sets the ``degenerate`` flag.
    """
    z = 1j * r.support_nodes
    poles = _arrowhead_roots(z, r.weights)
    zeros = _arrowhead_roots(z, r.weights * r.support_values)
    n = r.degree
    # eigenvalues beyond any sensible scale are numerically infinite
    scale = 1e8 * max(1.0, np.max(np.abs(z)))
    poles = poles[np.abs(poles) < scale]
    zeros = zeros[np.abs(zeros) < scale]
    degenerate = len(poles) < n or len(zeros) < n or r.near_degenerate
    return PoleZeroSet(poles=poles, zeros=zeros, degenerate=bool(degenerate))


def product_form(pz: PoleZeroSet, r: BarycentricRational, z):
    """Evaluate ``c prod(z - zeros)/prod(z - poles)`` with ``c`` fixed by ``r``."""
    z0 = 1j * 0.5 * (r.support_nodes[0] + r.support_nodes[-1]) + 0.1
    c = r(z0) * np.prod(z0 - pz.poles) / np.prod(z0 - pz.zeros)
    zv = np.asarray(z, dtype=complex)
    num = np.prod(zv[..., None] - pz.zeros, axis=-1)
    den = np.prod(zv[..., None] - pz.poles, axis=-1)
    return c * num / den
