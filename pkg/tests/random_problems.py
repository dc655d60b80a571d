"""Random zero-source discrete problems for comparison-principle checks."""

import numpy as np

from spcd.mesh import TensorMesh, build_space_mesh, build_time_mesh
from spcd.problem import constant
from spcd.solver import DiscreteProblem


def random_problem(rng) -> DiscreteProblem:
    N = 2 * int(rng.integers(2, 40))
    M = int(rng.integers(1, 30))
    eps = 2.0 ** -int(rng.integers(0, 27))
    T = float(rng.uniform(0.1, 2.0))
    mesh = TensorMesh(build_space_mesh(N, eps, 1.0), build_time_mesh(M, T, eps, 1.0))
    c0, c1 = rng.uniform(1.0, 3.0, 2)
    conv = lambda x, t: c0 + c1 * x * x * (1 + np.sin(5 * t) ** 2)
    return DiscreteProblem(mesh, eps, constant(c0), rng.normal(size=N + 1),
                           rng.normal(size=M + 1), rng.normal(size=M + 1), convection=conv)


def comparison_violations(n: int = 100, seed: int = 2024) -> int:
    """Number of solves whose extremes lie outside the range of their data."""
    from spcd.solver import solve
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        dp = random_problem(rng)
        Y = solve(dp).values
        data = np.concatenate([dp.initial, dp.left, dp.right])
        slack = 1e-12 * max(1.0, np.abs(data).max())
        bad += int(Y.min() < data.min() - slack or Y.max() > data.max() + slack)
    return bad
