"""Bilinear interpolation, two-mesh differences and convergence sweeps."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .examples import get_example
from .solver import GridFunction, solve_remainder

log = logging.getLogger(__name__)

DEDUP_TOL = 1e-13
_CHUNK = 1 << 22


def _locate(nodes, pts):
    idx = np.searchsorted(nodes, pts, side="right") - 1
    idx = np.clip(idx, 0, nodes.size - 2)
    w = (pts - nodes[idx]) / (nodes[idx + 1] - nodes[idx])
    return idx, w


def _check_domain(Y: GridFunction, x, t):
    xn, tn = Y.x, Y.t
    if np.any(x < xn[0]) or np.any(x > xn[-1]) or np.any(t < tn[0]) or np.any(t > tn[-1]):
        raise ValueError("evaluation point outside the mesh domain")


def bilinear_eval(Y: GridFunction, x, t):
    """Piecewise-bilinear interpolant of ``Y`` at the broadcast points ``(x, t)``."""
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    _check_domain(Y, x, t)
    i, wx = _locate(Y.x, x)
    j, wt = _locate(Y.t, t)
    V = Y.values
    out = ((1 - wx) * (1 - wt) * V[i, j] + wx * (1 - wt) * V[i + 1, j]
           + (1 - wx) * wt * V[i, j + 1] + wx * wt * V[i + 1, j + 1])
    return out if out.ndim else float(out)


def eval_on_grid(Y: GridFunction, xs, ts) -> np.ndarray:
    """Interpolant on the tensor grid ``xs x ts``; shape ``(len(xs), len(ts))``."""
    xs, ts = np.asarray(xs, dtype=float), np.asarray(ts, dtype=float)
    _check_domain(Y, xs, ts)
    i, wx = _locate(Y.x, xs)
    along_x = (1 - wx)[:, None] * Y.values[i] + wx[:, None] * Y.values[i + 1]
    j, wt = _locate(Y.t, ts)
    return along_x[:, j] * (1 - wt) + along_x[:, j + 1] * wt


def merge_nodes(a, b, tol: float = DEDUP_TOL) -> np.ndarray:
    """Sorted union of two node sets; nodes closer than ``tol`` are merged."""
    u = np.sort(np.concatenate([a, b]))
    keep = np.concatenate([[True], np.diff(u) > tol])
    return u[keep]


def two_mesh_difference(Yc: GridFunction, Yf: GridFunction, union: str = "tensor") -> float:
    """Max of ``|Yc - Yf|`` (both interpolated) over the union of the meshes.

    ``union="tensor"`` uses (union of x nodes) x (union of t nodes);
    ``union="nodes"`` uses only the nodes of the two meshes.
    """
    if not (np.isclose(Yc.x[-1], Yf.x[-1]) and np.isclose(Yc.t[-1], Yf.t[-1])
            and Yc.x[0] == Yf.x[0] and Yc.t[0] == Yf.t[0]):
        raise ValueError("meshes cover different domains")
    if union == "nodes":
        dc = np.abs(Yc.values - eval_on_grid(Yf, Yc.x, Yc.t)).max()
        df = np.abs(Yf.values - eval_on_grid(Yc, Yf.x, Yf.t)).max()
        return float(max(dc, df))
    if union != "tensor":
        raise ValueError(f"unknown union mode {union!r}")
    xs = merge_nodes(Yc.x, Yf.x)
    ts = merge_nodes(Yc.t, Yf.t)
    step = max(1, _CHUNK // xs.size)
    worst = 0.0
    for s in range(0, ts.size, step):
        tt = ts[s:s + step]
        diff = np.abs(eval_on_grid(Yc, xs, tt) - eval_on_grid(Yf, xs, tt))
        worst = max(worst, float(diff.max()))
    return worst


def order(d_coarse: float, d_fine: float) -> float:
    """Two-mesh order ``log2(D_N / D_2N)``."""
    if d_coarse <= 0.0 or d_fine <= 0.0:
        raise ValueError("differences must be positive to form an order")
    return float(np.log2(d_coarse / d_fine))


def m_for(N: int, m_rule: str = "n") -> int:
    """Number of time cells for N space cells: ``"n"`` (M = N) or ``"fixed:K"``."""
    if m_rule == "n":
        return N
    if m_rule.startswith("fixed:"):
        return int(m_rule.split(":", 1)[1])
    raise ValueError(f"unknown M rule {m_rule!r}")


@dataclass
class TwoMeshReport:
    """Per-eps two-mesh differences ``D[e, l]`` and orders ``P[e, l]``."""
    example_id: int
    level: int
    Ns: List[int]
    Ms: List[int]
    eps_exps: List[int]
    D: np.ndarray
    P: np.ndarray = field(init=False)
    D_uniform: np.ndarray = field(init=False)
    P_uniform: np.ndarray = field(init=False)

    def __post_init__(self):
        self.D = np.asarray(self.D, dtype=float)
        self.P = np.array([[order(r[l], r[l + 1]) for l in range(len(self.Ns) - 1)]
                           for r in self.D]).reshape(len(self.eps_exps), -1)
        self.D_uniform = self.D.max(axis=0)
        self.P_uniform = np.array([order(self.D_uniform[l], self.D_uniform[l + 1])
                                   for l in range(len(self.Ns) - 1)])

    def row(self, eps_exp: int) -> np.ndarray:
        return self.D[self.eps_exps.index(eps_exp)]

    def orders(self, eps_exp: int) -> np.ndarray:
        return self.P[self.eps_exps.index(eps_exp)]


def sweep_row(example_id: int, level: int, eps_exp: int, Ns: Sequence[int],
              Ms: Sequence[int], union: str = "tensor") -> List[float]:
    """Two-mesh differences for one eps = 2^-eps_exp at each (N, M) in the lists.

    The comparison mesh for column l is ``(Ns[l+1], Ms[l+1])``; the lists
    carry one more entry than the table has columns. Each fine solution is
    reused as the next coarse one.
    """
    problem = get_example(example_id).build(2.0 ** -eps_exp)
    prev = solve_remainder(problem, Ns[0], Ms[0], level)
    out = []
    for N, M in zip(Ns[1:], Ms[1:]):
        cur = solve_remainder(problem, N, M, level)
        out.append(two_mesh_difference(prev, cur, union))
        prev = cur
    log.debug("example %d eps=2^-%d: %s", example_id, eps_exp, out)
    return out


def run_sweep(example_id: int, level: int = 0, n0: int = 32, levels: int = 7,
              eps_exps: Optional[Sequence[int]] = None, m_rule: str = "n",
              workers: int = 1, union: str = "tensor") -> TwoMeshReport:
    """Two-mesh table over an eps ladder for ``N = n0 * 2^l``, ``l < levels``.

    ``levels`` counts the table columns, so the finest solve uses
    ``N = n0 * 2^levels``. With ``m_rule="fixed:K"`` every solve uses K time
    cells; otherwise M doubles together with N.
    """
    if n0 < 4 or n0 % 2:
        raise ValueError("n0 must be even and >= 4")
    if levels < 2:
        raise ValueError("need at least two levels to form an order")
    get_example(example_id)
    eps_exps = list(range(27)) if eps_exps is None else list(eps_exps)
    Ns = [n0 * 2 ** l for l in range(levels + 1)]
    Ms = [m_for(N, m_rule) for N in Ns]
    args = [(example_id, level, e, Ns, Ms, union) for e in eps_exps]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(sweep_row, *zip(*args)))
    else:
        rows = [sweep_row(*a) for a in args]
    return TwoMeshReport(example_id, level, Ns[:-1], Ms[:-1], eps_exps, np.array(rows))
