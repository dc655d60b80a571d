"""Upwind finite differences with implicit Euler on a tensor Shishkin mesh."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import solve_banded

from .mesh import TensorMesh, build_mesh
from .problem import ProblemSpec
from .singular import SingularBasis, remainder_data, singular_part

RESIDUAL_TOL = 1e-10


class SchemeStructureError(RuntimeError):
    """The assembled level matrix is not an M-matrix."""


class ResidualError(RuntimeError):
    """A computed solution does not satisfy the discrete equations."""


@dataclass
class DiscreteProblem:
    """Discrete data for ``-eps d2x Y + a D-x Y + b Y + D-t Y = f``.

    ``convection`` (x, t) -> a takes precedence over ``a`` when given.
    """
    mesh: TensorMesh
    eps: float
    a: Callable
    initial: np.ndarray
    left: np.ndarray
    right: np.ndarray
    b: Optional[Callable] = None
    f: Optional[Callable] = None
    convection: Optional[Callable] = None

    def __post_init__(self):
        n, m = self.mesh.shape
        self.initial = np.asarray(self.initial, dtype=float)
        self.left = np.asarray(self.left, dtype=float)
        self.right = np.asarray(self.right, dtype=float)
        if self.initial.shape != (n,) or self.left.shape != (m,) or self.right.shape != (m,):
            raise ValueError("initial/boundary arrays do not match the mesh")

    def convection_at(self, j: int) -> np.ndarray:
        x, t = self.mesh.x[1:-1], self.mesh.t[j]
        if self.convection is not None:
            return np.asarray(self.convection(x, t), dtype=float) * np.ones_like(x)
        return np.full_like(x, float(self.a(t)))

    def reaction_at(self, j: int) -> float:
        return 0.0 if self.b is None else float(self.b(self.mesh.t[j]))

    def source_at(self, j: int) -> np.ndarray:
        x = self.mesh.x[1:-1]
        if self.f is None:
            return np.zeros_like(x)
        return np.asarray(self.f(x, self.mesh.t[j]), dtype=float) * np.ones_like(x)


@dataclass
class GridFunction:
    """Node values ``values[i, j]`` at ``(x_i, t_j)``."""
    mesh: TensorMesh
    values: np.ndarray
    residual: Optional[float] = None

    @property
    def x(self):
        return self.mesh.x

    @property
    def t(self):
        return self.mesh.t


def tridiagonal_solve(lower, diag, upper, rhs) -> np.ndarray:
    """Solve a tridiagonal system; ``lower``/``upper`` have length ``n - 1``."""
    diag = np.asarray(diag, dtype=float)
    n = diag.size
    ab = np.zeros((3, n))
    ab[0, 1:] = upper
    ab[1] = diag
    ab[2, :-1] = lower
    return solve_banded((1, 1), ab, np.asarray(rhs, dtype=float),
                        overwrite_ab=True, check_finite=False)


def _level_matrix(dp: DiscreteProblem, j: int):
    """Tridiagonal coefficients (lower, diag, upper) of the level-j operator."""
    h = np.diff(dp.mesh.x)
    hl, hr = h[:-1], h[1:]
    k = dp.mesh.t[j] - dp.mesh.t[j - 1]
    a = dp.convection_at(j)
    diff = 2.0 * dp.eps / (hl + hr)
    lower = -diff / hl - a / hl
    upper = -diff / hr
    diag = diff / hl + diff / hr + a / hl + dp.reaction_at(j) + 1.0 / k
    return lower, diag, upper, k


def check_m_matrix(lower, diag, upper, k):
    if np.any(lower > 0.0) or np.any(upper > 0.0) or np.any(diag <= 0.0):
        raise SchemeStructureError("level matrix has wrong sign pattern")
    rows = diag + lower + upper
    slack = 64.0 * np.finfo(float).eps * (diag - lower - upper)
    if np.any(rows < 1.0 / k - slack):
        raise SchemeStructureError("level matrix row sums below 1/k")


def advance_level(dp: DiscreteProblem, j: int, prev: np.ndarray) -> np.ndarray:
    """Node values at time level ``j`` (boundary entries included)."""
    if not 1 <= j <= dp.mesh.time.M:
        raise ValueError(f"level {j} outside 1..{dp.mesh.time.M}")
    lower, diag, upper, k = _level_matrix(dp, j)
    check_m_matrix(lower, diag, upper, k)
    rhs = dp.source_at(j) + np.asarray(prev, dtype=float)[1:-1] / k
    left, right = dp.left[j], dp.right[j]
    rhs[0] -= lower[0] * left
    rhs[-1] -= upper[-1] * right
    out = np.empty(dp.mesh.shape[0])
    out[0], out[-1] = left, right
    out[1:-1] = tridiagonal_solve(lower[1:], diag, upper[:-1], rhs)
    return out


def scheme_residual(dp: DiscreteProblem, Y: np.ndarray) -> float:
    """Largest interior residual of the scheme, scaled by the diagonal.

    The result is in units of Y, relative to ``max(1, max|Y|)``.
    """
    worst = 0.0
    scale = max(1.0, float(np.max(np.abs(Y))))
    for j in range(1, dp.mesh.time.M + 1):
        lower, diag, upper, k = _level_matrix(dp, j)
        col = Y[:, j]
        res = (lower * col[:-2] + diag * col[1:-1] + upper * col[2:]
               - dp.source_at(j) - Y[1:-1, j - 1] / k)
        worst = max(worst, float(np.max(np.abs(res / diag))) / scale)
    return worst


def solve(dp: DiscreteProblem, check: bool = True) -> GridFunction:
    """March the scheme through all time levels.

    With ``check`` the a posteriori residual is computed and a
    :class:`ResidualError` raised when it exceeds ``RESIDUAL_TOL``.
    """
    n, m = dp.mesh.shape
    Y = np.empty((n, m))
    Y[:, 0] = dp.initial
    for j in range(1, m):
        Y[:, j] = advance_level(dp, j, Y[:, j - 1])
    residual = None
    if check:
        residual = scheme_residual(dp, Y)
        if residual > RESIDUAL_TOL:
            raise ResidualError(f"scheme residual {residual:.3e} exceeds {RESIDUAL_TOL}")
    return GridFunction(dp.mesh, Y, residual)


def remainder_problem(problem: ProblemSpec, N: int, M: int, level: int = 0,
                      basis: Optional[SingularBasis] = None) -> DiscreteProblem:
    basis = SingularBasis.from_problem(problem) if basis is None else basis
    data = remainder_data(problem, basis, level)
    mesh = build_mesh(problem, N, M)
    return DiscreteProblem(
        mesh, problem.eps, problem.a,
        initial=data.initial(mesh.x),
        left=data.left(mesh.t),
        right=data.right(mesh.t),
        b=problem.b, f=problem.f, convection=problem.convection)


def solve_remainder(problem: ProblemSpec, N: int, M: int, level: int = 0,
                    check: bool = True) -> GridFunction:
    """Approximate ``y = u - S`` (level 0) or ``y_1`` (level 1) on the (N, M) mesh."""
    return solve(remainder_problem(problem, N, M, level), check=check)


def reconstruct_u(Y: GridFunction, basis: SingularBasis, level: int, x, t):
    """``u`` at arbitrary points: interpolated remainder plus the exact singular part."""
    from .analysis import bilinear_eval
    return bilinear_eval(Y, x, t) + singular_part(basis, x, t, level)
