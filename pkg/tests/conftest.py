import numpy as np
import pytest
from hypothesis import settings

from uniexp.driver import BestApproxConfig, compute_best

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

# (omega, reference error) for degree 32
REF_N32 = [
    (95.48, 1.00e-1), (91.35, 1.00e-2), (84.16, 1.00e-4), (77.86, 1.01e-6),
    (72.19, 1.01e-8), (67.03, 1.01e-10), (62.29, 1.00e-12),
]
REF_N256 = [
    (797.18, 1.00e-1), (791.45, 1.00e-2), (780.93, 1.00e-4), (771.16, 1.00e-6),
    (761.89, 1.00e-8), (753.01, 1.01e-10), (744.44, 1.00e-12),
]
# AAA with 4900 equispaced test nodes, degree 32
AAA_REF_N32 = [
    (95.48, 1.32), (91.35, 1.17e-1), (84.16, 5.47e-4), (77.86, 3.05e-5),
    (72.19, 2.09e-7), (67.03, 2.12e-9), (62.29, 1.07e-11),
]

N8_OMEGA = 10.667589462022040


@pytest.fixture(scope="session")
def best_n32():
    """Combined-strategy results for all degree-32 rows, keyed by omega."""
    return {w: compute_best(BestApproxConfig(n=32, omega=w)) for w, _ in REF_N32}


@pytest.fixture(scope="session")
def converged_n8():
    return compute_best(BestApproxConfig(n=8, omega=N8_OMEGA, tol_delta=1e-8))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


#: Acceptance outcomes, criterion number -> (passed, detail); filled by test_acceptance.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
