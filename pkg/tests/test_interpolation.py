import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniexp.driver import initial_nodes
from uniexp.errors import DomainError, SmallestSingularValueNotIsolated
from uniexp.interpolation import NodeSet, build_interpolant
from uniexp.numerics import approximation_error, unitarity_defect


def random_nodes(rng, n, symmetric=False, xi=0.5):
    """Random perturbation of the starting nodes for ``omega = xi (n+1) pi``."""
    base = initial_nodes(n, xi * (n + 1) * np.pi)
    x = base.nodes
    gaps = np.diff(np.concatenate([[-1.0], x, [1.0]]))
    room = 0.3 * np.minimum(gaps[:-1], gaps[1:])
    if symmetric:
        return NodeSet.from_half(base.half + rng.uniform(-1, 1, n) * room[n + 1:])
    return NodeSet(x + rng.uniform(-1, 1, 2 * n + 1) * room)


def test_n1_matches_linearized_solve_on_random_points(rng):
    x = np.array([-np.sqrt(3) / 2, 0.0, np.sqrt(3) / 2])
    r = build_interpolant(1.0, NodeSet(x))
    z = 1j * x
    f = np.exp(1j * x)
    p0, p1, q1 = np.linalg.solve(np.column_stack([np.ones(3), z, -f * z]), f)
    pts = 1j * rng.uniform(-1, 1, 20)
    ref = (p0 + p1 * pts) / (1 + q1 * pts)
    assert np.max(np.abs(r(pts) - ref)) <= 1e-11


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 32), xi=st.floats(0.05, 0.95), seed=st.integers(0, 2**32 - 1),
       symmetric=st.booleans())
def test_residuals_vanish_at_nodes(n, xi, seed, symmetric):
    rng = np.random.default_rng(seed)
    nodes = random_nodes(rng, n, symmetric, xi)
    omega = xi * (n + 1) * np.pi
    try:
        r = build_interpolant(omega, nodes)
    except SmallestSingularValueNotIsolated:
        return
    assert np.max(approximation_error(r, omega, nodes.nodes)) <= 1e-13


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 64), xi=st.floats(0.3, 0.95), seed=st.integers(0, 2**32 - 1))
def test_unitary_near_spread_nodes(n, xi, seed):
    omega = xi * (n + 1) * np.pi
    base = initial_nodes(n, omega).half
    gaps = np.diff(np.concatenate([[0.0], base, [1.0]]))
    shift = np.random.default_rng(seed).uniform(-0.3, 0.3, n) * np.minimum(gaps[:-1], gaps[1:])
    try:
        r = build_interpolant(omega, NodeSet.from_half(base + shift))
    except SmallestSingularValueNotIsolated:
        return
    assert unitarity_defect(r, np.linspace(-1, 1, 10_000)) <= 1e-13


@pytest.mark.parametrize("n,omega", [(3, 5.0), (8, 20.0), (16, 40.0)])
def test_methods_agree(n, omega):
    nodes = initial_nodes(n, omega)
    x = np.linspace(-1, 1, 301)
    ref = build_interpolant(omega, nodes, "symmetric").on_axis(x)
    for method in ("structured", "loewner"):
        r = build_interpolant(omega, nodes, method)
        assert np.max(np.abs(r.on_axis(x) - ref)) <= 1e-10


def test_symmetric_method_weight_parity():
    for n in (4, 5):
        r = build_interpolant(7.0, initial_nodes(n, 7.0))
        beta = np.real(r.centered)
        assert np.array_equal(beta[::-1], (-1) ** n * beta)


def test_symmetric_nodes_give_symmetric_interpolant():
    nodes = initial_nodes(12, 30.0)
    r = build_interpolant(30.0, nodes, "structured")
    x = np.linspace(-1, 1, 101)
    assert np.max(np.abs(np.conj(r.on_axis(-x)) - r.on_axis(x))) <= 1e-13


def test_independent_of_support_choice(rng):
    n, omega = 10, 25.0
    nodes = initial_nodes(n, omega)
    x = np.linspace(-1, 1, 401)
    ref = build_interpolant(omega, nodes).on_axis(x)
    for _ in range(5):
        support = np.sort(rng.choice(2 * n + 1, n + 1, replace=False))
        r = build_interpolant(omega, nodes, "structured", support=support)
        assert np.max(np.abs(r.on_axis(x) - ref)) <= 1e-10


def test_reversed_input_same_canonical_nodes(rng):
    nodes = random_nodes(rng, 6)
    rev = NodeSet.from_points(nodes.nodes[::-1])
    assert rev == nodes
    r = build_interpolant(9.0, rev)
    assert np.max(approximation_error(r, 9.0, nodes.nodes)) <= 1e-13


@pytest.mark.parametrize("n,omega", [(30, 0.01), (20, 0.1), (10, 0.01)])
def test_unresolvable_gap_raises(n, omega):
    with pytest.raises(SmallestSingularValueNotIsolated) as info:
        build_interpolant(omega, initial_nodes(n, omega))
    assert info.value.ratio > 0.1


def test_gap_check_can_be_disabled():
    r = build_interpolant(0.01, initial_nodes(10, 0.01), gap_ratio=np.inf)
    assert unitarity_defect(r, np.linspace(-1, 1, 101)) <= 1e-13


@pytest.mark.parametrize("omega", [0.0, -1.0, 4 * np.pi, 20.0])
def test_omega_outside_domain(omega):
    with pytest.raises(DomainError):
        build_interpolant(omega, initial_nodes(3, 1.0))


@pytest.mark.parametrize("bad", [
    [0.0, 0.1], [0.1, 0.0, 0.2], [-1.0, 0.0, 0.5], [-0.5, 0.0, 1.0], [-0.5, 0.0, 0.0],
])
def test_nodeset_validation(bad):
    with pytest.raises(ValueError):
        NodeSet(bad)


def test_symmetric_nodeset_must_mirror():
    with pytest.raises(ValueError, match="mirrored"):
        NodeSet([-0.5, 0.0, 0.4], symmetric=True)
    s = NodeSet.from_points([0.5, 0.0, -0.5])
    assert s.symmetric and s.n == 1 and list(s.half) == [0.5]


def test_symmetric_method_needs_symmetric_nodes():
    with pytest.raises(ValueError):
        build_interpolant(1.0, NodeSet([-0.5, 0.1, 0.6]), "symmetric")
    with pytest.raises(ValueError):
        build_interpolant(1.0, initial_nodes(1, 1.0), "nonsense")
