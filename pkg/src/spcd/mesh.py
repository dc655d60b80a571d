"""Piecewise-uniform Shishkin meshes in space and time."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .problem import ProblemSpec, crossing_time


@dataclass(frozen=True)
class SpaceMesh:
    nodes: np.ndarray
    N: int
    sigma: float
    alpha: float


@dataclass(frozen=True)
class TimeMesh:
    nodes: np.ndarray
    M: int
    T: float
    kind: str = "uniform"
    tau: Optional[float] = None
    t_star: Optional[float] = None

    @property
    def steps(self) -> np.ndarray:
        return np.diff(self.nodes)


@dataclass(frozen=True)
class TensorMesh:
    space: SpaceMesh
    time: TimeMesh

    @property
    def x(self) -> np.ndarray:
        return self.space.nodes

    @property
    def t(self) -> np.ndarray:
        return self.time.nodes

    @property
    def shape(self):
        return (self.space.N + 1, self.time.M + 1)


def _pieces(breaks, counts):
    parts = [np.linspace(breaks[0], breaks[1], counts[0] + 1)]
    for k in range(1, len(counts)):
        parts.append(np.linspace(breaks[k], breaks[k + 1], counts[k] + 1)[1:])
    return np.concatenate(parts)


def build_space_mesh(N: int, eps: float, alpha: float) -> SpaceMesh:
    """Shishkin mesh with N/2 cells on ``[0, 1-sigma]`` and N/2 on ``[1-sigma, 1]``."""
    if N < 4 or N % 2:
        raise ValueError(f"N must be even and >= 4, got {N}")
    if eps <= 0.0 or alpha <= 0.0:
        raise ValueError("eps and alpha must be positive")
    sigma = min(0.5, eps / alpha * np.log(N))
    nodes = _pieces([0.0, 1.0 - sigma, 1.0], [N // 2, N // 2])
    return SpaceMesh(nodes, N, sigma, alpha)


def build_time_mesh(M: int, T: float, eps: float, alpha: float,
                    t_star: Optional[float] = None) -> TimeMesh:
    """Uniform time mesh, or the three-piece mesh condensed around ``t_star``.

    Around ``t_star`` half of the M cells cover ``[t_star - tau, t_star + tau]``
    and a quarter cover each of the two remaining pieces.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if t_star is None:
        return TimeMesh(np.linspace(0.0, T, M + 1), M, T)
    if M % 4:
        raise ValueError(f"M must be divisible by 4 for the layer-adapted time mesh, got {M}")
    if not 0.0 < t_star < T:
        raise ValueError("t_star must lie strictly inside (0, T)")
    tau = min(t_star / 2.0, (T - t_star) / 2.0,
              2.0 * np.sqrt(t_star * eps * np.log(M)) / alpha)
    nodes = _pieces([0.0, t_star - tau, t_star + tau, T], [M // 4, M // 2, M // 4])
    return TimeMesh(nodes, M, T, "shishkin", tau, t_star)


def select_time_mesh(problem: ProblemSpec, M: int) -> TimeMesh:
    """Layer-adapted time mesh when the characteristic reaches x = 1 before T."""
    t_star = crossing_time(problem.curve, problem.T)
    return build_time_mesh(M, problem.T, problem.eps, problem.alpha, t_star)


def build_mesh(problem: ProblemSpec, N: int, M: int) -> TensorMesh:
    return TensorMesh(build_space_mesh(N, problem.eps, problem.alpha),
                      select_time_mesh(problem, M))
