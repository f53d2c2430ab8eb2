"""A-priori choice of the frequency ``omega`` for a target error ``eps``.

Two estimates of the ``omega`` at which the degree-n unitary best
approximant attains error ``eps``: an experimental fit
``omega_e = (n+1) pi exp(-p_a(log eps) n^p_b(log eps))`` and the inverse of
the leading-order asymptotic error for small ``omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class OmegaEstimateTables:
    pa_coeffs: tuple
    pb_coeffs: tuple
    pa_extrap: tuple
    pb_extrap: tuple


TABLES = OmegaEstimateTables(
    pa_coeffs=(
        7.7325733748629055e-1,
        -5.777408873924058e-1,
        -6.860343132683391e-2,
        -1.4498935965331126e-2,
        -2.0017032381431967e-3,
        -1.792107115710027e-4,
        -1.0467338695044732e-5,
        -3.9545380249348945e-7,
        -9.304919862544986e-9,
        -1.2386694533170104e-10,
        -7.121569685837123e-13,
    ),
    pb_coeffs=(
        -9.296235152950844e-1,
        -2.4713673601660884e-2,
        -8.54706119111975e-3,
        -2.0382018252632794e-3,
        -3.2440829161667404e-4,
        -3.459972041530702e-5,
        -2.4972665972026706e-6,
        -1.2203258361585594e-7,
        -3.971747584379515e-9,
        -8.237224551239086e-11,
        -9.84139635152686e-13,
        -5.152327054589812e-15,
    ),
    pa_extrap=(1.2653161350741573, -3.4960298585304206e-1),
    pb_extrap=(-8.76285182160704e-1, 2.8332004893961966e-4),
)

#: Below this target the linear extrapolation of the fit is used.
EXTRAPOLATION_EPS = 1e-14


def horner(coeffs, t):
    """``sum c_j t^j`` for coefficients in increasing order."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def omega_experimental(n, eps, tables: OmegaEstimateTables = TABLES):
    if n < 1:
        raise DomainError("n must be at least 1")
    if not 0 < eps <= 2:
        raise DomainError(f"eps={eps} outside (0, 2]")
    t = math.log(eps)
    if eps < EXTRAPOLATION_EPS:
        pa, pb = horner(tables.pa_extrap, t), horner(tables.pb_extrap, t)
    else:
        pa, pb = horner(tables.pa_coeffs, t), horner(tables.pb_coeffs, t)
    return (n + 1) * math.pi * math.exp(-pa * n ** pb)


def _log_central(n):
    # log((2n)! / n!) = sum_{j=1}^n log(n + j)
    return math.fsum(math.log(n + j) for j in range(1, n + 1))


def omega_asymptotic(n, eps):
    """Solve ``2 (n!)^2 (omega/2)^(2n+1) / ((2n)! (2n+1)!) = eps`` for ``omega``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if not eps > 0:
        raise DomainError(f"eps={eps} must be positive")
    if n == 0:
        return float(eps)
    m = 2 * n + 1
    return 2.0 * math.exp((math.log(eps * m / 2) + 2 * _log_central(n)) / m)


def error_estimate_asymptotic(n, omega):
    """Leading-order error ``2 (n!)^2 (omega/2)^(2n+1) / ((2n)! (2n+1)!)``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if not omega > 0:
        raise DomainError(f"omega={omega} must be positive")
    if n == 0:
        return float(omega)
    m = 2 * n + 1
    return math.exp(math.log(2.0) + m * math.log(omega / 2) - math.log(m) - 2 * _log_central(n))


def auto_threshold(n):
    return 10.0 ** (-2 * (n - 4) / 3)


def choose_method(n, eps):
    """``"asymptotic"`` if ``eps < 10^(-2(n-4)/3)``, else ``"experimental"``."""
    return "asymptotic" if eps < auto_threshold(n) else "experimental"


def omega_auto(n, eps):
    if choose_method(n, eps) == "asymptotic":
        return omega_asymptotic(n, eps)
    return omega_experimental(n, eps)


def estimate(n, eps, method="auto"):
    """``(omega, method_used)`` for ``method`` in auto/experimental/asymptotic."""
    if method == "auto":
        method = choose_method(n, eps)
    if method == "experimental":
        return omega_experimental(n, eps), method
    if method == "asymptotic":
        return omega_asymptotic(n, eps), method
    raise ValueError(f"unknown method {method!r}")
