import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spcd.examples import example1, example2, example3, example5
from spcd.problem import (CharacteristicCurve, CumulativeIntegral, InitialCondition,
                          ProblemSpec, adaptive_simpson, characteristic_position,
                          constant, crossing_time, jump)


def _const_pieces(c):
    return tuple(constant(c) if k == 0 else constant(0.0) for k in range(5))


STEP = InitialCondition(_const_pieces(-2.0), _const_pieces(1.0), 0.3)


def test_adaptive_simpson_polynomial_and_exp():
    assert adaptive_simpson(lambda s: s ** 3, 0.0, 2.0) == pytest.approx(4.0, abs=1e-13)
    assert adaptive_simpson(np.exp, 0.0, 1.0) == pytest.approx(np.e - 1.0, abs=1e-12)
    assert adaptive_simpson(np.exp, 1.0, 1.0) == 0.0


@pytest.mark.parametrize("a, d, t, expected", [
    (constant(1.0), 0.3, 0.2, 0.5),
    (lambda t: 1.0 + t * t, 0.3, 0.5, 0.3 + 0.5 + 0.5 ** 3 / 3.0),
    (lambda t: 1.0 + t, 0.3, 0.5, 0.925),
])
def test_characteristic_position_examples(a, d, t, expected):
    curve = CharacteristicCurve(a, d, 2.0)
    assert characteristic_position(curve, t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("build", [example1, example3, example5])
def test_quadrature_matches_closed_form(build):
    p = build(0.5)
    quad = CharacteristicCurve(p.a, p.d, p.T)
    ts = np.linspace(0.0, p.T, 1001)
    assert np.max(np.abs(quad(ts) - p.curve(ts))) <= 1e-10


def test_example5_curve_is_tangent_addition():
    p = example5(1.0)
    ts = np.linspace(0.0, 0.5, 11)
    np.testing.assert_allclose(p.curve(ts), np.tan(np.arctan(0.1) + ts), rtol=0, atol=1e-14)


def test_cumulative_integral_domain():
    F = CumulativeIntegral(constant(1.0), 1.0)
    with pytest.raises(ValueError):
        F(1.5)
    with pytest.raises(ValueError):
        F(-0.1)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_characteristic_strictly_increasing(t1, t2):
    curve = example3(1.0).curve
    lo, hi = sorted((t1, t2))
    if hi - lo < 1e-9:
        return
    assert characteristic_position(curve, hi) > characteristic_position(curve, lo)


def test_crossing_time_examples():
    T_star = crossing_time(CharacteristicCurve(lambda t: 1.0 + t, 0.3, 2.0))
    assert T_star == pytest.approx(np.sqrt(2.4) - 1.0, abs=1e-11)
    assert crossing_time(CharacteristicCurve(constant(1.0), 0.3, 0.5)) is None
    assert crossing_time(CharacteristicCurve(constant(2.0), 0.5, 1.0)) == pytest.approx(0.25, abs=1e-11)


def test_crossing_at_final_time_is_absent():
    assert crossing_time(CharacteristicCurve(constant(1.0), 0.3, 0.7)) is None


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 3.0), st.floats(0.05, 0.95))
def test_crossing_time_lands_on_one(speed, d):
    curve = CharacteristicCurve(lambda t: speed + np.sin(t) ** 2, d, 2.0)
    T_star = crossing_time(curve)
    if T_star is not None:
        assert abs(characteristic_position(curve, T_star) - 1.0) <= 1e-10


def test_jumps_of_examples():
    assert jump(example1(1.0).ic, 0) == 3.0
    assert jump(example1(1.0).ic, 1) == 0.0
    assert jump(example2(1.0).ic, 1) == pytest.approx(-3 * 0.7 ** 2 + 3 * 0.3 ** 2, abs=1e-15)
    assert jump(example2(1.0).ic, 1) == pytest.approx(-1.2, abs=1e-14)
    with pytest.raises(ValueError):
        jump(STEP, 5)


@pytest.mark.parametrize("k", range(5))
def test_jump_antisymmetric(k):
    ic = example2(1.0).ic
    assert jump(ic.swapped(), k) == -jump(ic, k)


def test_initial_condition_validation():
    with pytest.raises(ValueError):
        InitialCondition(_const_pieces(1.0), _const_pieces(1.0), 0.3)
    with pytest.raises(ValueError):
        InitialCondition(_const_pieces(0.0), _const_pieces(1.0), 1.0)
    with pytest.raises(ValueError):
        InitialCondition(_const_pieces(0.0)[:4], _const_pieces(1.0), 0.3)
    assert STEP(0.1) == -2.0 and STEP(0.3) == 1.0 and STEP(0.9) == 1.0


def test_problem_validation():
    kw = dict(ic=STEP, T=1.0, alpha=1.0)
    with pytest.raises(ValueError):
        ProblemSpec(a=constant(1.0), eps=0.0, **kw)
    with pytest.raises(ValueError):
        ProblemSpec(a=constant(1.0), eps=1.5, **kw)
    with pytest.raises(ValueError):
        ProblemSpec(a=lambda t: 1.0 - t, eps=0.1, **kw)
    with pytest.raises(ValueError):
        ProblemSpec(a=constant(1.0), b=constant(-1.0), eps=0.1, **kw)
    p = ProblemSpec(a=constant(1.0), eps=0.1, **kw)
    assert p.boundary(0, 0.5) == 0.0 and p.reaction(0.2) == 0.0
    assert np.all(p.source(np.zeros(3), 0.1) == 0.0)
