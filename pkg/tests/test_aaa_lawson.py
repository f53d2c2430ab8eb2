import numpy as np
import pytest

from conftest import AAA_REF_N32
from uniexp.aaa_lawson import (
    TestNodeKind, TestNodeSet, aaa, aaa_lawson, adaptive_test_nodes,
    detect_interpolation_nodes, lawson,
)
from uniexp.equi_metrics import local_error_maxima, sampled_max_error, sandwich
from uniexp.numerics import unitarity_defect

GRID = np.linspace(-1, 1, 10_000)


@pytest.fixture(scope="module")
def tests4900():
    return TestNodeSet.equispaced(4900)


@pytest.fixture(scope="module")
def lawson_84(tests4900):
    return aaa_lawson(84.16, tests4900, 32, 100)


@pytest.mark.parametrize("omega,ref", AAA_REF_N32)
def test_aaa_reference_rows(tests4900, omega, ref):
    r = aaa(omega, tests4900, 32)
    assert r.degree == 32
    assert unitarity_defect(r, GRID) <= 1e-12
    assert abs(np.log10(sampled_max_error(r, omega)) - np.log10(ref)) <= 1


def test_lawson_reaches_reference(best_n32, tests4900):
    best = best_n32[62.29].report.uniform_error
    r, state = aaa_lawson(62.29, tests4900, 32, 100)
    assert sampled_max_error(r, 62.29) <= 2 * 1.00e-12
    assert all(best * (1 - 1e-3) <= e <= 2 for e in state.error_history)
    assert len(state.error_history) == state.iteration == 100
    assert unitarity_defect(r, GRID) <= 1e-12


def test_lawson_keeps_degree_and_weights(lawson_84):
    r, state = lawson_84
    assert r.degree == 32
    assert np.all(state.weights >= 0)
    assert abs(np.sum(state.weights) - 1) <= 1e-12


def test_lawson_zero_iterations_is_identity(tests4900):
    r = aaa(77.86, tests4900, 32)
    out, state = lawson(r, 77.86, tests4900, 0)
    assert out is r
    assert state.iteration == 0 and state.error_history == []


def test_small_degree_lawson_close_to_driver():
    from uniexp.driver import BestApproxConfig, compute_best
    best = compute_best(BestApproxConfig(n=2, omega=1.0, tol_delta=1e-12)).report.uniform_error
    r, _ = aaa_lawson(1.0, TestNodeSet.equispaced(2000), 2, 200)
    err = sampled_max_error(r, 1.0)
    assert best <= err <= best * (1 + 1e-2)


def test_aaa_supports_are_test_nodes(tests4900):
    r = aaa(72.19, tests4900, 32)
    assert len(r.support_nodes) == 33
    assert np.all(np.isin(r.support_nodes, tests4900.nodes))


def test_aaa_deterministic(tests4900):
    a, b = aaa(67.03, tests4900, 32), aaa(67.03, tests4900, 32)
    assert np.array_equal(a.support_nodes, b.support_nodes)
    assert np.array_equal(a.weights, b.weights)


def test_adaptive_nodes_valid():
    tests = adaptive_test_nodes(77.86, 32)
    initial = 10 * 66
    assert initial <= len(tests) <= 2 * initial
    assert tests.kind is TestNodeKind.ADAPTIVE
    assert np.all(np.diff(tests.nodes) > 0)
    assert -1 <= tests.nodes[0] and tests.nodes[-1] <= 1


def test_adaptive_beats_equispaced_same_count():
    tests = adaptive_test_nodes(77.86, 32)
    adaptive = sampled_max_error(aaa(77.86, tests, 32), 77.86)
    plain = sampled_max_error(aaa(77.86, TestNodeSet.equispaced(len(tests)), 32), 77.86)
    assert adaptive <= plain


def test_adaptive_rounds_validated():
    with pytest.raises(ValueError):
        adaptive_test_nodes(1.0, 1, rounds=0)


def test_detect_recovers_driver_nodes(best_n32):
    res = best_n32[77.86]
    found = detect_interpolation_nodes(res.rational, 77.86)
    assert found is not None
    assert np.max(np.abs(found.nodes - res.nodes.nodes)) <= 1e-10


def test_detect_none_for_maximal_error():
    r = aaa(95.48, TestNodeSet.equispaced(660), 32)
    assert sampled_max_error(r, 95.48) >= 2 - 1e-12
    assert detect_interpolation_nodes(r, 95.48) is None


def test_detect_after_lawson_gives_report(lawson_84, best_n32):
    r, _ = lawson_84
    nodes = detect_interpolation_nodes(r, 84.16)
    assert nodes is not None and len(nodes.nodes) == 65
    rep = local_error_maxima(r, 84.16, nodes)
    assert 0 <= rep.delta < 1
    if rep.alternating:
        lo, hi = sandwich(rep)
        best = best_n32[84.16].report.uniform_error
        assert lo <= best * (1 + 1e-9) and best <= hi * (1 + 1e-9)


@pytest.mark.parametrize("bad", [[0.0], [0.0, 0.0], [0.5, 0.1], [-1.5, 0.0], [0.0, 1.2]])
def test_test_node_set_validation(bad):
    with pytest.raises(ValueError):
        TestNodeSet(bad)


def test_too_few_test_nodes():
    with pytest.raises(ValueError):
        aaa(1.0, TestNodeSet.equispaced(10), 4)
