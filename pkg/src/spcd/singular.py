"""Complementary error function, the singular family psi_0..psi_4 and the
analytic parts subtracted from the solution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .problem import CharacteristicCurve, CumulativeIntegral, ProblemSpec, jump

# W. J. Cody, "Rational Chebyshev approximations for the error function",
# Math. Comp. 23 (1969); coefficients as in CALERF.
_A = (3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
      3.20937758913846947e03, 1.85777706184603153e-1)
_B = (2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
      2.84423683343917062e03)
_C = (5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
      2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
      2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8)
_D = (1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
      1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
      3.43936767414372164e03, 1.23033935480374942e03)
_P = (3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
      1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2)
_Q = (2.56852019228982242e00, 1.87295284992346725e00, 5.27905102951428412e-1,
      6.05183413124413191e-2, 2.33520497626869185e-3)
_INV_SQRT_PI = 5.6418958354775628695e-1
_ERFC_XBIG = 26.543
EXP_FLOOR = -700.0


def _exp_neg_square(y):
    # exp(-y^2) with y^2 split so the leading part is exact in binary.
    ysq = np.trunc(y * 16.0) / 16.0
    rest = (y - ysq) * (y + ysq)
    return np.exp(-ysq * ysq) * np.exp(-rest)


def erfc(z):
    """Complementary error function, vectorised, relative error ~1e-16."""
    z = np.asarray(z, dtype=float)
    y = np.abs(z)
    out = np.empty_like(y)

    small = y <= 0.46875
    if np.any(small):
        zs = z[small]
        ysq = zs * zs
        num, den = _A[4] * ysq, ysq
        for i in range(3):
            num = (num + _A[i]) * ysq
            den = (den + _B[i]) * ysq
        out[small] = 1.0 - zs * (num + _A[3]) / (den + _B[3])

    mid = (~small) & (y <= 4.0)
    if np.any(mid):
        ym = y[mid]
        num, den = _C[8] * ym, ym
        for i in range(7):
            num = (num + _C[i]) * ym
            den = (den + _D[i]) * ym
        out[mid] = _exp_neg_square(ym) * (num + _C[7]) / (den + _D[7])

    big = (y > 4.0) & (y < _ERFC_XBIG)
    if np.any(big):
        yb = y[big]
        ysq = 1.0 / (yb * yb)
        num, den = _P[5] * ysq, ysq
        for i in range(4):
            num = (num + _P[i]) * ysq
            den = (den + _Q[i]) * ysq
        r = ysq * (num + _P[4]) / (den + _Q[4])
        out[big] = _exp_neg_square(yb) * (_INV_SQRT_PI - r) / yb

    out[y >= _ERFC_XBIG] = 0.0
    neg = (~small) & (z < 0.0)
    out[neg] = 2.0 - out[neg]
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SingularBasis:
    """Data needed to evaluate psi_i, E and the subtracted singular parts."""
    eps: float
    curve: CharacteristicCurve
    jumps: Sequence[float]
    b_integral: Optional[Callable] = None

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if len(self.jumps) != 5 or self.jumps[0] == 0.0:
            raise ValueError("need five jumps with a nonzero zeroth jump")

    @classmethod
    def from_problem(cls, problem: ProblemSpec) -> "SingularBasis":
        b_int = None
        if problem.b is not None:
            b_int = CumulativeIntegral(problem.b, problem.T, problem.b_antiderivative)
        return cls(problem.eps, problem.curve,
                   tuple(jump(problem.ic, i) for i in range(5)), b_int)

    @property
    def d(self) -> float:
        return self.curve.d

    def decay(self, t):
        """``exp(-int_0^t b)``; identically one when there is no reaction term."""
        if self.b_integral is None:
            return np.ones(np.shape(t)) if np.ndim(t) else 1.0
        return np.exp(-self.b_integral(t))

    def _scaled(self, x, t):
        x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        dist = self.curve(t) - x
        dist = np.asarray(dist, dtype=float)
        root = np.sqrt(self.eps * t)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(t > 0.0, dist / (2.0 * np.where(t > 0.0, root, 1.0)), 0.0)
        # far beyond the erfc cutoff; keeps z*z finite for subnormal t
        z = np.clip(z, -1e150, 1e150)
        return x, t, dist, root, z

    def E(self, x, t):
        """Gaussian ``exp(-(x - d(t))^2 / (4 eps t))``; limit 1 on the curve at t = 0."""
        x, t, dist, _, z = self._scaled(x, t)
        expo = -z * z
        out = np.where(expo > EXP_FLOOR, np.exp(np.maximum(expo, EXP_FLOOR)), 0.0)
        out = np.where(t > 0.0, out, np.where(dist == 0.0, 1.0, 0.0))
        return out if out.ndim else float(out)

    def psi_all(self, x, t, upto: int = 4):
        """List ``[psi_0, ..., psi_upto]`` at the broadcast points."""
        if upto not in range(5):
            raise ValueError(f"psi index must be in 0..4, got {upto}")
        x, t, dist, root, z = self._scaled(x, t)
        at0 = t == 0.0
        psi0 = np.where(at0, np.where(dist > 0.0, 0.0, np.where(dist < 0.0, 2.0, 1.0)),
                        erfc(z))
        out = [psi0]
        if upto >= 1:
            expo = -z * z
            e = np.where(expo > EXP_FLOOR, np.exp(np.maximum(expo, EXP_FLOOR)), 0.0)
            psi1 = dist * psi0 - 2.0 * root * _INV_SQRT_PI * e
            psi1 = np.where(at0, np.where(dist < 0.0, 2.0 * dist, 0.0), psi1)
            out.append(psi1)
        for i in range(2, upto + 1):
            out.append(dist * out[i - 1] + 2.0 * self.eps * t * (i - 1) * out[i - 2])
        return [o if o.ndim else float(o) for o in out]

    def psi(self, i: int, x, t):
        return psi(self, i, x, t)


def psi(basis: SingularBasis, i: int, x, t):
    """Singular function ``psi_i`` (i = 0..4) at ``(x, t)``.

    At ``t = 0`` the pointwise limits are used: ``psi_0`` is 0, 1, 2 left of,
    on and right of ``d``, ``psi_1 = 2 (d - x)`` right of ``d`` and 0 elsewhere,
    and the higher ones follow from the recursion.
    """
    if i not in range(5):
        raise ValueError(f"psi index must be in 0..4, got {i}")
    return basis.psi_all(x, t, i)[i]


def singular_part(basis: SingularBasis, x, t, level: int = 0):
    """Analytic function subtracted from ``u``.

    Level 0 removes the jump, level 1 also removes the jump in the first
    derivative. Both carry the factor ``exp(-int_0^t b)``.
    """
    if level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    ps = basis.psi_all(x, t, level)
    out = 0.5 * basis.jumps[0] * ps[0]
    if level == 1:
        out = out - 0.5 * basis.jumps[1] * ps[1]
    out = out * basis.decay(t)
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class RemainderData:
    """Initial and lateral data of the smooth remainder problem."""
    initial: Callable
    left: Callable
    right: Callable
    level: int


def remainder_data(problem: ProblemSpec, basis: SingularBasis, level: int = 0) -> RemainderData:
    if level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    ic = problem.ic
    d = ic.d
    j0, j1 = basis.jumps[0], basis.jumps[1]

    def initial(x):
        x = np.asarray(x, dtype=float)
        right = ic.right[0](x) - j0
        if level == 1:
            right = right - j1 * (x - d)
        out = np.where(x > d, right, ic.left[0](x))
        out = np.asarray(out, dtype=float) * np.ones_like(x)
        return out if out.ndim else float(out)

    def left(t):
        return problem.boundary(0, t) - singular_part(basis, 0.0, t, level)

    def right(t):
        return problem.boundary(1, t) - singular_part(basis, 1.0, t, level)

    return RemainderData(initial, left, right, level)


def psi_residual(basis: SingularBasis, i: int, x: float, t: float, h: float) -> float:
    """``-eps psi_xx + a(t) psi_x + psi_t`` by fourth-order central differences.

    Validation utility: the exact value is zero.
    """
    if not (0.0 <= x - 2 * h and x + 2 * h <= 1.0 and t - 2 * h > 0.0
            and t + 2 * h <= basis.curve.T):
        raise ValueError("difference stencil leaves the domain")
    offs = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * h
    fx = np.asarray(psi(basis, i, x + offs, t))
    ft = np.asarray(psi(basis, i, x, t + offs))
    d1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / (12.0 * h)
    d2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12.0 * h * h)
    return float(-basis.eps * d2 @ fx + basis.curve.a(t) * (d1 @ fx) + d1 @ ft)
