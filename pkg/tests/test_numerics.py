import mpmath
import numpy as np
import pytest

from uniexp.driver import initial_nodes
from uniexp.interpolation import NodeSet, build_interpolant
from uniexp.numerics import (
    POLE, BarycentricRational, evaluate, half_angle, poles_zeros, product_form,
    relative_deviation, unitarity_defect,
)

ROOT3 = np.sqrt(3.0) / 2


def linearized_n1(omega, x):
    """Coefficients of p(z) = p0 + p1 z, q(z) = 1 + q1 z with p(ix_j) = exp(i omega x_j) q(ix_j)."""
    z = 1j * np.asarray(x)
    f = np.exp(1j * omega * np.asarray(x))
    A = np.column_stack([np.ones(3), z, -f * z])
    p0, p1, q1 = np.linalg.solve(A, f)
    return p0, p1, q1


def test_n1_matches_linearized_solve():
    x = np.array([-ROOT3, 0.0, ROOT3])
    r = build_interpolant(1.0, NodeSet(x))
    p0, p1, q1 = linearized_n1(1.0, x)
    z = 0.25j
    assert abs(r(z) - (p0 + p1 * z) / (1 + q1 * z)) <= 1e-12


def test_n1_pole_zero_explicit():
    x = np.array([-ROOT3, 0.0, ROOT3])
    r = build_interpolant(1.0, NodeSet(x))
    p0, p1, q1 = linearized_n1(1.0, x)
    pz = poles_zeros(r)
    assert len(pz.poles) == 1 and len(pz.zeros) == 1
    assert abs(pz.poles[0] - (-1 / q1)) <= 1e-10
    assert abs(pz.zeros[0] - (-p0 / p1)) <= 1e-10
    assert not pz.degenerate


def test_support_values_returned_exactly():
    r = build_interpolant(7.0, initial_nodes(5, 7.0))
    for s, f in zip(r.support_nodes, r.support_values):
        assert evaluate(r, 1j * s) == f
        assert r.on_axis(s) == f


def test_value_one_at_zero_support_node():
    r = build_interpolant(3.3, initial_nodes(2, 3.3))
    assert 0.0 in r.support_nodes
    assert evaluate(r, 0.0) == 1


def test_pole_indication():
    r = BarycentricRational([-0.5, 0.5], [1.0, 1.0], [1.0, 1j])
    assert evaluate(r, 0.0) == POLE
    assert np.isinf(evaluate(r, np.array([0.0, 0.1]))[0])


def test_scalar_and_array_shapes():
    r = build_interpolant(2.0, initial_nodes(3, 2.0))
    assert isinstance(r(0.3j), complex)
    assert r(np.zeros((2, 3))).shape == (2, 3)


@pytest.mark.parametrize("n,omega", [(1, 2.0), (8, 20.0), (32, 84.16), (64, 180.0)])
def test_interpolants_unitary(n, omega):
    r = build_interpolant(omega, initial_nodes(n, omega))
    assert unitarity_defect(r, np.linspace(-1, 1, 10_000)) <= 1e-13


def test_constant_function_unitary():
    one = BarycentricRational([0.0], [1.0], [1.0])
    assert unitarity_defect(one, np.linspace(-1, 1, 101)) == 0


def test_symmetric_interpolant_conjugate_mirror():
    r = build_interpolant(40.0, initial_nodes(16, 40.0))
    x = np.linspace(-1, 1, 101)
    assert np.max(np.abs(np.conj(r.on_axis(-x)) - r.on_axis(x))) <= 1e-13


def test_converged_zeros_are_negated_poles(converged_n8):
    pz = poles_zeros(converged_n8.rational)
    assert len(pz.poles) == 8
    dist = np.abs(pz.poles[:, None] + pz.zeros[None, :])
    assert np.max(np.min(dist, axis=1)) <= 1e-8
    assert np.max(np.min(dist, axis=0)) <= 1e-8
    assert np.all(np.abs(pz.poles.real) > 1e-3)


@pytest.mark.parametrize("n,omega", [(4, 6.0), (8, 20.0), (16, 40.0)])
def test_product_form_consistent(n, omega):
    r = build_interpolant(omega, initial_nodes(n, omega))
    pz = poles_zeros(r)
    z = 1j * np.linspace(-1, 1, 100)
    ref = r(z)
    assert np.max(np.abs(product_form(pz, r, z) - ref) / np.abs(ref)) <= 1e-8


def test_half_angle_against_mpmath(rng):
    mpmath.mp.dps = 40
    omega = 744.44
    s = np.sort(rng.uniform(-1, 1, 7))
    x = rng.uniform(-1, 1, 5)
    sn, cs = half_angle(omega, s, x)
    for i, xi in enumerate(x):
        for k, sk in enumerate(s):
            a = mpmath.mpf(omega) * (mpmath.mpf(sk) - mpmath.mpf(xi)) / 2
            assert abs(sn[i, k] - float(mpmath.sin(a))) <= 4e-16
            assert abs(cs[i, k] - float(mpmath.cos(a))) <= 4e-16


def test_relative_deviation_against_mpmath(converged_n8):
    mpmath.mp.dps = 40
    r = converged_n8.rational
    omega = r.omega
    x = np.linspace(-1, 1, 37)
    got = relative_deviation(r, omega, x)
    for xi, g in zip(x, got):
        if np.any(r.support_nodes == xi):
            continue
        den = mpmath.mpf(0)
        for ck, sk in zip(r.centered, r.support_nodes):
            d = mpmath.mpf(xi) - mpmath.mpf(sk)
            den += mpmath.mpf(float(ck)) * mpmath.expjpi(mpmath.mpf(omega) * d / (2 * mpmath.pi)) / d
        ref = complex(mpmath.conj(den) / den - 1)
        assert abs(g - ref) <= 1e-15


@pytest.mark.parametrize("kwargs,msg", [
    (dict(support_nodes=[0.1, 0.0], weights=[1, 1], support_values=[1, 1]), "increasing"),
    (dict(support_nodes=[0.0, 0.1], weights=[1, 0], support_values=[1, 1]), "nonzero"),
    (dict(support_nodes=[0.0], weights=[1, 1], support_values=[1, 1]), "equal length"),
    (dict(support_nodes=[], weights=[], support_values=[]), "at least one"),
])
def test_rational_validation(kwargs, msg):
    with pytest.raises(ValueError, match=msg):
        BarycentricRational(**kwargs)


def test_arrays_read_only():
    r = build_interpolant(2.0, initial_nodes(2, 2.0))
    with pytest.raises(ValueError):
        r.weights[0] = 1.0


def test_near_degenerate_flag():
    r = BarycentricRational([0.0, 0.5], [1.0, 1e-20], [1.0, 1.0])
    assert r.near_degenerate
    assert poles_zeros(r).degenerate
