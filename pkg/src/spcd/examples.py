"""The five test problems used for the convergence tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from .problem import InitialCondition, ProblemSpec, constant

_ZERO = constant(0.0)


def _polynomial(coeffs):
    """Value and derivatives 0..4 of ``sum c_k x^k``."""
    p = np.polynomial.Polynomial(coeffs)
    return tuple(p.deriv(k) if k else p for k in range(5))


def _pieces(c):
    return tuple(constant(c) if k == 0 else _ZERO for k in range(5))


def _source(x, t):
    return 4.0 * x * (1.0 - x) * t + t * t


def _step_ic(d):
    return InitialCondition(_pieces(-2.0), _pieces(1.0), d)


def example1(eps: float) -> ProblemSpec:
    return ProblemSpec(
        a=lambda t: 1.0 + t * t, ic=_step_ic(0.3), eps=eps, T=0.5, alpha=1.0,
        f=_source, g0=constant(-2.0), g1=constant(1.0),
        a_antiderivative=lambda t: t + t ** 3 / 3.0, name="example1")


def example2(eps: float) -> ProblemSpec:
    ic = InitialCondition(_polynomial([0, 0, 0, -1]), _polynomial([1, -3, 3, -1]), 0.3)
    return ProblemSpec(
        a=lambda t: 1.0 + t * t, b=constant(1.0), ic=ic, eps=eps, T=0.5, alpha=1.0,
        f=_source, a_antiderivative=lambda t: t + t ** 3 / 3.0,
        b_antiderivative=lambda t: t, name="example2")


def example3(eps: float) -> ProblemSpec:
    return ProblemSpec(
        a=lambda t: 1.0 + t, ic=_step_ic(0.3), eps=eps, T=2.0, alpha=1.0,
        f=_source, g0=constant(-2.0), g1=constant(1.0),
        a_antiderivative=lambda t: t + t * t / 2.0, name="example3")


def example4(eps: float) -> ProblemSpec:
    d = min(0.3, float(np.sqrt(eps)))
    ic = InitialCondition(_polynomial([0, -2]), _polynomial([1, 0, -1]), d)
    return ProblemSpec(
        a=lambda t: 1.0 + t * t, ic=ic, eps=eps, T=0.5, alpha=1.0, f=_source,
        g0=lambda t: 4.0 * t * t, g1=lambda t: t * (t + 0.5),
        a_antiderivative=lambda t: t + t ** 3 / 3.0, name="example4")


def _ex5_curve(t):
    tn = np.tan(t)
    return (0.1 + tn) / (1.0 - 0.1 * tn)


def example5(eps: float) -> ProblemSpec:
    # a = 1 + x^2; along the characteristic it is 1 + d(t)^2
    return ProblemSpec(
        a=lambda t: 1.0 + _ex5_curve(t) ** 2, ic=_step_ic(0.1), eps=eps, T=0.5,
        alpha=1.0, f=_source, g0=constant(-2.0), g1=constant(1.0),
        a_antiderivative=lambda t: _ex5_curve(t) - 0.1,
        convection=lambda x, t: 1.0 + x * x, name="example5")


@dataclass(frozen=True)
class ExampleSpec:
    id: int
    build: Callable[[float], ProblemSpec]
    summary: str
    notes: str
    uniform: bool = True


EXAMPLES: Dict[int, ExampleSpec] = {
    1: ExampleSpec(1, example1,
                   "a = 1+t^2, f = 4x(1-x)t+t^2, phi = -2 | 1 at d = 0.3, u(0,t) = -2, u(1,t) = 1, T = 0.5",
                   "jump in phi only ([phi'] = 0): almost first order; layers stay apart"),
    2: ExampleSpec(2, example2,
                   "as 1 with reaction b = 1, phi = -x^3 | (1-x)^3 at d = 0.3, zero boundary data",
                   "[phi'] != 0: order 1/2 for y, restored towards 1 with level 1"),
    3: ExampleSpec(3, example3,
                   "a = 1+t, T = 2, otherwise as 1; characteristic reaches x = 1 at T* = sqrt(2.4)-1",
                   "interior layer merges with the boundary layer; time mesh condensed around T*"),
    4: ExampleSpec(4, example4,
                   "as 1 with phi = -2x | 1-x^2, u(0,t) = 4t^2, u(1,t) = t(t+0.5), "
                   "eps-dependent d = min(0.3, sqrt(eps))",
                   "discontinuity approaches the corner as eps -> 0; order about 1/2"),
    5: ExampleSpec(5, example5,
                   "a = 1+x^2 (space dependent), phi = -2 | 1 at d = 0.1, u(0,t) = -2, u(1,t) = 1",
                   "expected non-uniform: the subtraction does not remove the layer when a = a(x,t)",
                   uniform=False),
}


def get_example(example_id: int) -> ExampleSpec:
    try:
        return EXAMPLES[int(example_id)]
    except (KeyError, ValueError):
        raise KeyError(f"unknown example {example_id!r}; choose from {sorted(EXAMPLES)}") from None


def list_examples() -> str:
    lines = []
    for ex in EXAMPLES.values():
        flag = "" if ex.uniform else "  [expected non-uniform]"
        lines.append(f"{ex.id}: {ex.summary}{flag}\n   {ex.notes}")
    return "\n".join(lines)
