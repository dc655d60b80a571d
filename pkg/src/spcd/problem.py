"""Continuous problem data: coefficients, discontinuous initial condition and
the characteristic curve along which the discontinuity travels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline

ScalarField1 = Callable[[np.ndarray], np.ndarray]
ScalarField2 = Callable[[np.ndarray, np.ndarray], np.ndarray]

N_SAMPLE_CHECK = 10_000
N_CACHE = 4096
QUAD_TOL = 1e-12
ROOT_TOL = 1e-12


def constant(c: float) -> ScalarField1:
    """Vectorised constant function of one variable."""
    c = float(c)
    return lambda t: np.full(np.shape(t), c) if np.ndim(t) else c


def constant2(c: float) -> ScalarField2:
    c = float(c)
    return lambda x, t: np.full(np.broadcast(x, t).shape, c)


def _adaptive_simpson(fn, a, b, tol, fa, fm, fb, whole, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = fn(lm), fn(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_adaptive_simpson(fn, a, m, 0.5 * tol, fa, flm, fm, left, depth - 1)
            + _adaptive_simpson(fn, m, b, 0.5 * tol, fm, frm, fb, right, depth - 1))


def adaptive_simpson(fn: Callable[[float], float], a: float, b: float,
                     tol: float = QUAD_TOL, max_depth: int = 50) -> float:
    """Adaptive Simpson quadrature of ``fn`` over ``[a, b]`` to absolute ``tol``."""
    if b == a:
        return 0.0
    fa, fm, fb = fn(a), fn(0.5 * (a + b)), fn(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(fn, a, b, tol, fa, fm, fb, whole, max_depth)


class CumulativeIntegral:
    """``F(t) = int_0^t g(s) ds`` on ``[0, T]``.

    Without an analytic antiderivative, ``F`` is tabulated at ``N_CACHE + 1``
    equispaced times by adaptive Simpson and evaluated in between with a cubic
    Hermite interpolant that uses the exact slopes ``g(t_k)``.
    """

    def __init__(self, g: ScalarField1, T: float,
                 exact: Optional[ScalarField1] = None):
        self.g = g
        self.T = float(T)
        self.exact = exact
        self._spline = None
        if exact is None:
            ts = np.linspace(0.0, self.T, N_CACHE + 1)
            fs = lambda s: float(g(s))
            piece_tol = QUAD_TOL / N_CACHE
            vals = np.empty_like(ts)
            vals[0] = 0.0
            for k in range(N_CACHE):
                vals[k + 1] = vals[k] + adaptive_simpson(fs, ts[k], ts[k + 1], piece_tol)
            slopes = np.asarray(g(ts), dtype=float) * np.ones_like(ts)
            self._spline = CubicHermiteSpline(ts, vals, slopes)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0) or np.any(t > self.T):
            raise ValueError(f"time outside [0, {self.T}]")
        if self.exact is not None:
            out = np.asarray(self.exact(t), dtype=float) * np.ones_like(t)
        else:
            out = self._spline(t)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class InitialCondition:
    """Two-piece initial data with a jump at ``d``.

    ``left[k]`` and ``right[k]`` evaluate the k-th derivative (k = 0..4) of the
    piece used for ``x < d`` and ``x >= d`` respectively.
    """
    left: Sequence[ScalarField1]
    right: Sequence[ScalarField1]
    d: float

    def __post_init__(self):
        if len(self.left) != 5 or len(self.right) != 5:
            raise ValueError("need derivative evaluators of orders 0..4 for both pieces")
        if not 0.0 < self.d < 1.0:
            raise ValueError(f"discontinuity d={self.d} must lie in (0, 1)")
        if jump(self, 0) == 0.0:
            raise ValueError("initial condition has no jump at d")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x < self.d, self.left[0](x), self.right[0](x))
        return out if out.ndim else float(out)

    def swapped(self) -> "InitialCondition":
        return InitialCondition(self.right, self.left, self.d)


def jump(ic: InitialCondition, order: int) -> float:
    """``phi_+^(order)(d) - phi_-^(order)(d)``."""
    if order not in range(5):
        raise ValueError(f"jump order must be in 0..4, got {order}")
    return float(ic.right[order](ic.d)) - float(ic.left[order](ic.d))


class CharacteristicCurve:
    """Path ``d(t) = d + int_0^t a(s) ds`` of the initial discontinuity."""

    def __init__(self, a: ScalarField1, d: float, T: float,
                 antiderivative: Optional[ScalarField1] = None):
        self.a = a
        self.d = float(d)
        self.T = float(T)
        self.integral = CumulativeIntegral(a, T, antiderivative)

    def __call__(self, t):
        return characteristic_position(self, t)


def characteristic_position(curve: CharacteristicCurve, t):
    """Position of the characteristic at time ``t`` (scalar or array)."""
    return curve.d + curve.integral(t)


def crossing_time(curve: CharacteristicCurve, T: Optional[float] = None) -> Optional[float]:
    """Time at which the characteristic reaches ``x = 1``, or ``None``.

    Only crossings strictly inside ``(0, T)`` count; reaching 1 at ``t = T``
    (to within the root tolerance) is reported as no crossing.
    """
    T = curve.T if T is None else float(T)
    if characteristic_position(curve, T) <= 1.0 + ROOT_TOL:
        return None
    lo, hi = 0.0, T
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if characteristic_position(curve, mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ProblemSpec:
    """``-eps u_xx + a u_x + b u + u_t = f`` on ``(0,1) x (0,T]``.

    ``a`` depends on ``t`` only. ``convection`` optionally gives a
    space-dependent coefficient ``a(x, t)`` used by the discrete scheme in place
    of ``a``; the theory does not cover that case and ``a`` then describes the
    convection felt along the characteristic.
    """
    a: ScalarField1
    ic: InitialCondition
    eps: float
    T: float
    alpha: float
    b: Optional[ScalarField1] = None
    f: Optional[ScalarField2] = None
    g0: Optional[ScalarField1] = None
    g1: Optional[ScalarField1] = None
    a_antiderivative: Optional[ScalarField1] = None
    b_antiderivative: Optional[ScalarField1] = None
    convection: Optional[ScalarField2] = None
    name: str = ""
    curve: CharacteristicCurve = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.eps <= 1.0:
            raise ValueError(f"eps={self.eps} outside (0, 1]")
        if self.T <= 0.0 or self.alpha <= 0.0:
            raise ValueError("T and alpha must be positive")
        ts = np.linspace(0.0, self.T, N_SAMPLE_CHECK)
        if np.any(np.asarray(self.a(ts)) < self.alpha):
            raise ValueError(f"a(t) drops below alpha={self.alpha}")
        if self.b is not None and np.any(np.asarray(self.b(ts)) < 0.0):
            raise ValueError("b(t) must be nonnegative")
        object.__setattr__(self, "curve", CharacteristicCurve(
            self.a, self.ic.d, self.T, self.a_antiderivative))

    @property
    def d(self) -> float:
        return self.ic.d

    def source(self, x, t):
        if self.f is None:
            return np.zeros(np.broadcast(x, t).shape)
        return self.f(x, t)

    def reaction(self, t) -> float:
        return 0.0 if self.b is None else float(self.b(t))

    def boundary(self, side: int, t):
        g = self.g0 if side == 0 else self.g1
        if g is None:
            return np.zeros(np.shape(t)) if np.ndim(t) else 0.0
        return g(t)
