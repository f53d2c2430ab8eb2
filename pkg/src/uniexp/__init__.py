"""Unitary best rational approximation of ``exp(i omega x)`` on ``[-1, 1]``."""

from .aaa_lawson import (
    LawsonState, TestNodeKind, TestNodeSet, aaa, aaa_lawson, adaptive_test_nodes,
    detect_interpolation_nodes, lawson,
)
from .driver import (
    BestApproxConfig, BestApproxResult, ConvergenceTrace, IterationRecord, StrategyChoice,
    compute_best, initial_nodes, restart,
)
from .equi_metrics import (
    EquioscillationReport, local_error_maxima, phase_error, sampled_max_error, sandwich,
)
from .errors import (
    Breakdown, DomainError, InterpolantConstructionFailed, InvalidCorrection,
    PreconditionNotMet, SmallestSingularValueNotIsolated,
)
from .interpolation import NodeSet, build_interpolant
from .node_correction import (
    BrasilParams, MaehlyVariant, Strategy, brasil_step, maehly_direct_step,
    maehly_system_step, select_strategy,
)
from .numerics import (
    BarycentricRational, PoleZeroSet, approximation_error, evaluate, poles_zeros,
    unitarity_defect,
)
from .omega_estimate import (
    error_estimate_asymptotic, omega_asymptotic, omega_auto, omega_experimental,
)

__version__ = "0.1.0"
