"""Command-line driver: convergence tables and solution surfaces for the examples."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .analysis import TwoMeshReport, m_for, run_sweep
from .examples import get_example, list_examples
from .mesh import select_time_mesh
from .singular import SingularBasis, singular_part
from .solver import solve_remainder

log = logging.getLogger(__name__)

NON_UNIFORM_BANNER = (
    "WARNING: example {k} has a space-dependent convection coefficient a(x,t).\n"
    "The subtracted singular part follows a single characteristic, so the\n"
    "interior layer is not removed and the method is NOT eps-uniform here.\n"
)


@dataclass
class RunConfig:
    example: int
    level: int = 0
    n0: int = 32
    levels: int = 7
    eps_exps: List[int] = field(default_factory=lambda: list(range(27)))
    m_rule: str = "n"
    out: Path = Path("out")
    tables: bool = True
    surfaces: Optional[Tuple[int, int]] = None
    workers: int = 1


def sci(v: float) -> str:
    """Four significant digits, e.g. ``3.495E-02``."""
    return f"{v:.3E}"


def full(v: float) -> str:
    # repr of a float round-trips exactly
    return repr(float(v))


def table_rows(report: TwoMeshReport):
    """Rows (eps_exp, N, M, D, P, D_full, P_full); uniform rows use eps_exp "uniform"."""
    ncol = len(report.Ns)
    blocks = [(str(e), report.D[i], report.P[i]) for i, e in enumerate(report.eps_exps)]
    blocks.append(("uniform", report.D_uniform, report.P_uniform))
    rows = []
    for label, D, P in blocks:
        for l in range(ncol):
            p = P[l] if l < ncol - 1 else None
            rows.append([label, report.Ns[l], report.Ms[l], sci(D[l]),
                         "" if p is None else f"{p:.3f}", full(D[l]),
                         "" if p is None else full(p)])
    return rows


def write_table_csv(report: TwoMeshReport, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["eps_exp", "N", "M", "D", "P", "D_full", "P_full"])
        w.writerows(table_rows(report))


def read_table_csv(path: Path) -> TwoMeshReport:
    """Rebuild a report from an emitted table; the full-precision columns are used."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    per_eps = [r for r in rows if r["eps_exp"] != "uniform"]
    eps_exps = list(dict.fromkeys(int(r["eps_exp"]) for r in per_eps))
    Ns = list(dict.fromkeys(int(r["N"]) for r in per_eps))
    Ms = [int(r["M"]) for r in per_eps[:len(Ns)]]
    D = np.array([float(r["D_full"]) for r in per_eps]).reshape(len(eps_exps), len(Ns))
    stem = path.stem.split("_")
    example_id = int(stem[1].removeprefix("example"))
    level = int(stem[2].removeprefix("level"))
    return TwoMeshReport(example_id, level, Ns, Ms, eps_exps, D)


def table_markdown(report: TwoMeshReport) -> str:
    head = "| | " + " | ".join(f"N={N}, M={M}" for N, M in zip(report.Ns, report.Ms)) + " |"
    sep = "|---" * (len(report.Ns) + 1) + "|"
    lines = [f"Example {report.example_id}, level {report.level}: two-mesh differences and orders",
             "", head, sep]

    def emit(label, D, P):
        lines.append(f"| {label} | " + " | ".join(sci(v) for v in D) + " |")
        lines.append("| | " + " | ".join(f"{p:.3f}" for p in P) + " | |")

    for i, e in enumerate(report.eps_exps):
        emit(f"eps=2^-{e}", report.D[i], report.P[i])
    emit("D^{N,M}", report.D_uniform, report.P_uniform)
    return "\n".join(lines) + "\n"


def write_surfaces(cfg: RunConfig, eps_exp: int, N: int) -> Tuple[Path, Path]:
    """Node values of the remainder and of the reconstructed solution."""
    problem = get_example(cfg.example).build(2.0 ** -eps_exp)
    M = m_for(N, cfg.m_rule)
    Y = solve_remainder(problem, N, M, cfg.level)
    basis = SingularBasis.from_problem(problem)
    X, T = np.meshgrid(Y.x, Y.t, indexing="ij")
    U = Y.values + singular_part(basis, X, T, cfg.level)
    tag = f"example{cfg.example}_level{cfg.level}_eps{eps_exp}_n{N}_m{M}"
    paths = (cfg.out / f"surface_y_{tag}.csv", cfg.out / f"surface_u_{tag}.csv")
    for path, V in zip(paths, (Y.values, U)):
        with open(path, "w") as fh:
            fh.write("x,t,value\n")
            xs, ts, vals = Y.x.tolist(), Y.t.tolist(), V.tolist()
            for j, t in enumerate(ts):
                for i, x in enumerate(xs):
                    fh.write(f"{x!r},{t!r},{vals[i][j]!r}\n")
    return paths


def run_example(cfg: RunConfig, stream=None) -> Tuple[Optional[TwoMeshReport], List[Path]]:
    """Run the sweep and emit tables (and surfaces when requested)."""
    stream = sys.stdout if stream is None else stream
    spec = get_example(cfg.example)
    if cfg.level not in (0, 1):
        raise ValueError("level must be 0 or 1")
    if not spec.uniform:
        sys.stderr.write(NON_UNIFORM_BANNER.format(k=spec.id))
    cfg.out.mkdir(parents=True, exist_ok=True)
    sample = spec.build(2.0 ** -cfg.eps_exps[0]) if cfg.eps_exps else spec.build(1.0)
    tm = select_time_mesh(sample, m_for(cfg.n0, cfg.m_rule))
    if tm.t_star is None:
        stream.write("time mesh: uniform\n")
    else:
        stream.write(f"time mesh: shishkin around T* = {tm.t_star:.10f}\n")

    written: List[Path] = []
    report = None
    if cfg.tables:
        report = run_sweep(cfg.example, cfg.level, cfg.n0, cfg.levels, cfg.eps_exps,
                           cfg.m_rule, cfg.workers)
        base = cfg.out / f"table_example{cfg.example}_level{cfg.level}"
        write_table_csv(report, base.with_suffix(".csv"))
        md = table_markdown(report)
        base.with_suffix(".md").write_text(md)
        written += [base.with_suffix(".csv"), base.with_suffix(".md")]
        stream.write(md)
    if cfg.surfaces is not None:
        written += list(write_surfaces(cfg, *cfg.surfaces))
    for p in written:
        stream.write(f"wrote {p}\n")
    return report, written


def parse_surfaces(text: str) -> Tuple[int, int]:
    """``"eps=12,n=64"`` -> (12, 64)."""
    try:
        kv = dict(part.split("=", 1) for part in text.split(","))
        return int(kv["eps"]), int(kv["n"])
    except (KeyError, ValueError):
        raise argparse.ArgumentTypeError(f"expected eps=<exp>,n=<int>, got {text!r}") from None


def parse_m_rule(text: str) -> str:
    try:
        m_for(4, text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"M rule must be 'n' or 'fixed:<int>', got {text!r}") from None
    return text


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; '#' starts a comment, keys match the long flags."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spcd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="two-mesh convergence table for one example")
    run.add_argument("--config", help="flat key = value file; flags override it")
    run.add_argument("--example", type=int, choices=range(1, 6))
    run.add_argument("--level", type=int, choices=(0, 1), default=0)
    run.add_argument("--n0", type=int, default=32)
    run.add_argument("--levels", type=int, default=7)
    run.add_argument("--eps-min-exp", type=int, default=0)
    run.add_argument("--eps-max-exp", type=int, default=26)
    run.add_argument("--m-rule", type=parse_m_rule, default="n")
    run.add_argument("--out", default="out")
    run.add_argument("--surfaces", type=parse_surfaces, default=None)
    run.add_argument("--no-tables", action="store_true")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("-v", "--verbose", action="store_true")
    sub.add_parser("list", help="describe the available examples")
    parser.set_defaults(_run_parser=run)
    return parser


def _apply_config(parser, argv):
    """Parse twice: config-file values become defaults, explicit flags win."""
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        run_parser = args._run_parser
        known = {a.dest: a for a in run_parser._actions}
        defaults = {}
        for key, value in read_config(args.config).items():
            if key not in known or key in ("config", "help"):
                parser.error(f"unknown config key {key!r}")
            action = known[key]
            if action.type is not None:
                value = action.type(value)
            elif isinstance(action, argparse._StoreTrueAction):
                value = value.lower() in ("1", "true", "yes", "on")
            defaults[key] = value
        run_parser.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = _apply_config(parser, argv)
    if args.command == "list":
        print(list_examples())
        return 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.example is None:
        parser.error("run: --example is required (on the command line or in the config file)")
    if args.eps_min_exp > args.eps_max_exp or args.eps_min_exp < 0:
        parser.error("need 0 <= eps-min-exp <= eps-max-exp")
    cfg = RunConfig(
        example=args.example, level=args.level, n0=args.n0, levels=args.levels,
        eps_exps=list(range(args.eps_min_exp, args.eps_max_exp + 1)),
        m_rule=args.m_rule, out=Path(args.out), tables=not args.no_tables,
        surfaces=args.surfaces, workers=args.workers)
    try:
        run_example(cfg)
    except (KeyError, ValueError) as exc:
        parser.error(str(exc).strip("'\""))
    return 0


if __name__ == "__main__":
    sys.exit(main())
