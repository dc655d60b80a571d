import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spcd.examples import example1, example3
from spcd.mesh import build_mesh, build_space_mesh, build_time_mesh, select_time_mesh
from spcd.problem import InitialCondition, ProblemSpec, constant


def test_space_mesh_cap_branch():
    m = build_space_mesh(8, 1.0, 1.0)
    assert m.sigma == 0.5
    np.testing.assert_allclose(m.nodes, np.arange(9) / 8, rtol=0, atol=1e-16)


def test_space_mesh_fine_branch():
    eps = 2.0 ** -10
    m = build_space_mesh(64, eps, 1.0)
    sigma = eps * np.log(64)
    assert m.sigma == pytest.approx(4.0614e-3, rel=1e-4)
    h = np.diff(m.nodes)
    np.testing.assert_allclose(h[:32], (1 - sigma) / 32, rtol=1e-12)
    np.testing.assert_allclose(h[32:], sigma / 32, rtol=1e-10)


def test_space_mesh_four_cells():
    m = build_space_mesh(4, 0.3, 1.0)
    assert m.sigma == pytest.approx(0.3 * np.log(4), rel=1e-15)
    s = 0.3 * np.log(4)
    np.testing.assert_allclose(m.nodes, [0.0, (1 - s) / 2, 1 - s, 1 - s / 2, 1.0], rtol=0, atol=1e-16)
    # hand values rounded to five digits
    np.testing.assert_allclose(m.nodes, [0.0, 0.29205, 0.5841, 0.79205, 1.0], atol=2e-5)


def test_space_mesh_validation():
    for N in (2, 7):
        with pytest.raises(ValueError):
            build_space_mesh(N, 0.1, 1.0)
    with pytest.raises(ValueError):
        build_space_mesh(8, 0.0, 1.0)


def test_sigma_not_nested_under_refinement():
    eps = 2.0 ** -12
    assert build_space_mesh(128, eps, 1.0).sigma > build_space_mesh(64, eps, 1.0).sigma


def test_uniform_time_mesh():
    m = build_time_mesh(8, 0.5, 0.1, 1.0)
    assert m.kind == "uniform"
    np.testing.assert_allclose(m.nodes, 0.0625 * np.arange(9), rtol=0, atol=1e-16)


def test_time_mesh_cap_branch():
    m = build_time_mesh(8, 2.0, 1.0, 1.0, t_star=0.5)
    assert m.tau == 0.25
    np.testing.assert_allclose(m.nodes, [0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 1.375, 2.0],
                               rtol=0, atol=1e-15)


def test_time_mesh_layer_branch():
    m = build_time_mesh(8, 2.0, 2.0 ** -20, 1.0, t_star=0.5492)
    assert m.tau == pytest.approx(2.087e-3, rel=1e-3)
    assert m.kind == "shishkin"
    assert (m.t_star - m.tau) in m.nodes and (m.t_star + m.tau) in m.nodes


def test_time_mesh_validation():
    with pytest.raises(ValueError):
        build_time_mesh(6, 2.0, 0.1, 1.0, t_star=0.5)
    with pytest.raises(ValueError):
        build_time_mesh(8, 2.0, 0.1, 1.0, t_star=2.0)


def test_select_time_mesh():
    assert select_time_mesh(example1(2.0 ** -4), 16).kind == "uniform"
    m = select_time_mesh(example3(2.0 ** -4), 16)
    assert m.kind == "shishkin"
    assert m.t_star == pytest.approx(np.sqrt(2.4) - 1.0, abs=1e-10)


def test_crossing_exactly_at_final_time_keeps_uniform_mesh():
    pieces = lambda c: tuple(constant(c) if k == 0 else constant(0.0) for k in range(5))
    p = ProblemSpec(a=constant(1.0), ic=InitialCondition(pieces(0.0), pieces(1.0), 0.3),
                    eps=0.1, T=0.7, alpha=1.0, a_antiderivative=lambda t: t)
    assert select_time_mesh(p, 8).kind == "uniform"


def test_tensor_mesh_shape():
    m = build_mesh(example3(0.01), 16, 8)
    assert m.shape == (17, 9)
    assert m.x.size == 17 and m.t.size == 9


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 512).map(lambda k: 2 * k), st.integers(0, 30), st.floats(0.5, 3.0))
def test_space_mesh_invariants(N, k, alpha):
    m = build_space_mesh(N, 2.0 ** -k, alpha)
    x = m.nodes
    assert x.size == N + 1 and x[0] == 0.0 and x[-1] == 1.0
    assert np.all(np.diff(x) > 0.0)
    assert m.sigma == min(0.5, 2.0 ** -k / alpha * np.log(N))
    assert abs(np.diff(x).sum() - 1.0) <= 4 * np.finfo(float).eps
    assert x[N // 2] == 1.0 - m.sigma


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 256).map(lambda k: 4 * k), st.floats(0.05, 0.95), st.integers(0, 30))
def test_time_mesh_invariants(M, frac, k):
    T = 2.0
    t_star = frac * T
    m = build_time_mesh(M, T, 2.0 ** -k, 1.0, t_star=t_star)
    t = m.nodes
    assert t.size == M + 1 and t[0] == 0.0 and t[-1] == T
    assert np.all(np.diff(t) > 0.0)
    assert t[M // 4] == t_star - m.tau and t[3 * M // 4] == t_star + m.tau
    assert abs(np.diff(t).sum() - T) <= 4 * np.finfo(float).eps * T
