"""Error metrics, convergence rates and convergence-study orchestration."""

import enum
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from fracgreen.galerkin import (
    BvpProblem,
    DiffusionProblem,
    assemble_mass,
    basis_kernel,
    crank_nicolson,
    solve_bvp,
)
from fracgreen.interpolation import EVAL_GRID, Interpolant, NodeKind, fill_distance, fit_interpolant, make_nodes
from fracgreen.kernels import KernelKind, KernelSpec
from fracgreen.problems import BENCHMARKS, BenchmarkKind
from fracgreen.quadrature import DEFAULT_RULE, QuadratureRule

__all__ = [
    "EvalDomain",
    "StudyConfig",
    "StudyError",
    "StudyRow",
    "convergence_rate",
    "fitted_slope",
    "side_by_side_markdown",
    "rmse",
    "rows_to_csv",
    "rows_to_markdown",
    "run_study",
    "solution_csv",
    "solve_cell",
]

INTERIOR = (0.01, 0.99)


class StudyError(RuntimeError):
    pass


class EvalDomain(enum.Enum):
    FULL = "full"
    INTERIOR = "interior"


def rmse(approx, exact):
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if approx.shape != exact.shape:
        raise ValueError(f"length mismatch: {approx.shape} vs {exact.shape}")
    if approx.size == 0:
        raise ValueError("rmse of an empty sample")
    return float(np.sqrt(np.mean((approx - exact) ** 2)))


def convergence_rate(e1, h1, e2, h2):
    """Observed order log(e1/e2) / log(h1/h2) between consecutive cells, h1 > h2."""
    if min(e1, h1, e2, h2) <= 0.0:
        raise ValueError("errors and fill distances must be positive")
    if not h1 > h2:
        raise ValueError("expected h1 > h2")
    return math.log(e1 / e2) / math.log(h1 / h2)


def fitted_slope(hs, errors):
    """Least-squares slope of log(error) against log(h)."""
    hs = np.asarray(hs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if hs.size < 2:
        raise ValueError("need at least two cells for a slope")
    return float(np.polyfit(np.log(hs), np.log(errors), 1)[0])


@dataclass(frozen=True)
class StudyRow:
    n: int
    h: float
    error: float
    rate: Optional[float] = None


@dataclass(frozen=True)
class StudyConfig:
    """One convergence study.

    ``kernel`` is required for interpolation benchmarks; BVP and diffusion
    benchmarks derive the operator kernel from the benchmark's side and ``alpha``.
    """

    benchmark: str
    alpha: float
    node_kind: NodeKind = NodeKind.UNIFORM
    n_list: tuple = (20, 40, 80, 160, 320)
    eval_domain: EvalDomain = EvalDomain.FULL
    rule: QuadratureRule = field(default=DEFAULT_RULE)
    kernel: Optional[KernelSpec] = None
    t0: float = 0.0
    t1: float = 1.0

    def __post_init__(self):
        if self.benchmark not in BENCHMARKS:
            raise ValueError(f"unknown benchmark {self.benchmark!r}; choose from {sorted(BENCHMARKS)}")
        n_list = tuple(int(n) for n in self.n_list)
        if not n_list or n_list[0] < 1 or any(b <= a for a, b in zip(n_list, n_list[1:])):
            raise ValueError("n_list must be strictly increasing positive counts")
        object.__setattr__(self, "n_list", n_list)
        object.__setattr__(self, "node_kind", NodeKind(self.node_kind))
        object.__setattr__(self, "eval_domain", EvalDomain(self.eval_domain))
        if self.bench.kind is BenchmarkKind.INTERPOLATION and self.kernel is None:
            object.__setattr__(self, "kernel", KernelSpec(KernelKind.RL_LEFT, self.alpha))

    @property
    def bench(self):
        return BENCHMARKS[self.benchmark]

    def operator_kernel(self):
        kind = KernelKind.RL_LEFT if self.bench.side == "left" else KernelKind.RL_RIGHT
        return KernelSpec(kind, self.alpha)


def eval_points(domain):
    if EvalDomain(domain) is EvalDomain.INTERIOR:
        lo, hi = INTERIOR
        return EVAL_GRID[(EVAL_GRID >= lo) & (EVAL_GRID <= hi)]
    return EVAL_GRID


def solve_cell(config, n):
    """Approximation for one cell, as (interpolant, exact function on x)."""
    bench = config.bench
    nodes = make_nodes(config.node_kind, n)
    alpha = config.alpha
    if bench.kind is BenchmarkKind.INTERPOLATION:
        s = fit_interpolant(config.kernel, nodes, bench.target(nodes.points))
        return s, bench.exact
    if bench.kind is BenchmarkKind.BVP:
        problem = BvpProblem(config.operator_kernel(), lambda x: bench.forcing(alpha, x), bench.exact)
        return solve_bvp(problem, nodes, config.rule), bench.exact
    problem = DiffusionProblem(
        config.operator_kernel(),
        source=lambda x, t: bench.source(alpha, x, t),
        initial=bench.initial,
        t0=config.t0,
        t1=config.t1,
        nt=n,
        exact=bench.exact,
    )
    coeffs = crank_nicolson(problem, nodes, config.rule, mass=assemble_mass(problem.spec, nodes, config.rule))
    s = Interpolant(basis_kernel(problem.spec), nodes, coeffs[-1])
    t1 = config.t1
    return s, lambda x: bench.exact(x, t1)


def run_study(config):
    rows = []
    x = eval_points(config.eval_domain)
    for n in config.n_list:
        try:
            s, exact = solve_cell(config, n)
            err = rmse(s(x), exact(x))
        except Exception as exc:
            raise StudyError(f"{config.benchmark} alpha={config.alpha:g} {config.node_kind.value} N={n}: {exc}") from exc
        h = fill_distance(s.nodes)
        rate = convergence_rate(rows[-1].error, rows[-1].h, err, h) if rows else None
        rows.append(StudyRow(n, h, err, rate))
    return rows


def rows_to_csv(rows):
    buf = io.StringIO(newline="")
    buf.write("n,h,error,rate\n")
    for r in rows:
        rate = "" if r.rate is None else f"{r.rate:.17g}"
        buf.write(f"{r.n},{r.h:.17g},{r.error:.17g},{rate}\n")
    return buf.getvalue()


def _fmt_rate(rate):
    return "--" if rate is None else f"{rate:.4f}"


def rows_to_markdown(rows, title=None):
    lines = []
    if title:
        lines += [f"**{title}**", ""]
    lines += ["| N | Error | Rate |", "|---|---|---|"]
    lines += [f"| {r.n} | {r.error:.4e} | {_fmt_rate(r.rate)} |" for r in rows]
    if len(rows) >= 2:
        lines += ["", f"least-squares slope: {fitted_slope([r.h for r in rows], [r.error for r in rows]):.4f}"]
    return "\n".join(lines) + "\n"


def side_by_side_markdown(blocks, title=None):
    """Side-by-side blocks (e.g. uniform / uniform interior / Chebyshev) in one table."""
    names = list(blocks)
    lines = []
    if title:
        lines += [f"**{title}**", ""]
    lines.append("| " + " | ".join(f"{name} N | Error | Rate" for name in names) + " |")
    lines.append("|" + "---|" * (3 * len(names)))
    for k in range(max(len(b) for b in blocks.values())):
        cells = []
        for name in names:
            r = blocks[name][k]
            cells.append(f"{r.n} | {r.error:.4e} | {_fmt_rate(r.rate)}")
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def solution_csv(s, exact, x=EVAL_GRID):
    """Columns x, u_N(x), u_exact(x), error on the evaluation grid."""
    x = np.asarray(x, dtype=float)
    approx = s(x)
    ref = exact(x)
    buf = io.StringIO(newline="")
    buf.write("x,u_n,u_exact,error\n")
    for row in zip(x, approx, ref, approx - ref):
        buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
    return buf.getvalue()
