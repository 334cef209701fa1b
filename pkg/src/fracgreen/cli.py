"""Command-line entry point: ``fracgreen <subcommand> ...`` (or ``python -m fracgreen``)."""

import argparse
import io
import logging
import sys

from fracgreen import _accel
from fracgreen.galerkin import DiffusionProblem, assemble_mass, basis_kernel, crank_nicolson
from fracgreen.interpolation import Interpolant, make_nodes
from fracgreen.kernels import KernelKind, KernelSpec, kernel_grid
from fracgreen.metrics import (
    StudyConfig,
    fitted_slope,
    side_by_side_markdown,
    rows_to_csv,
    rows_to_markdown,
    run_study,
    solution_csv,
    solve_cell,
)
from fracgreen.quadrature import QuadratureRule
from fracgreen.selftest import run_selftest

log = logging.getLogger("fracgreen")

NODE_CHOICES = ("uniform", "chebyshev")
ALL_BLOCKS = (
    ("Uniform", "uniform", "full"),
    ("Uniform (interior)", "uniform", "interior"),
    ("Chebyshev", "chebyshev", "full"),
)


def _alpha(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 1.0 < value <= 2.0:
        raise argparse.ArgumentTypeError("alpha must satisfy 1 < alpha <= 2")
    return value


def _count_list(text):
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of counts, got {text!r}")
    if not values or values[0] < 1 or any(b <= a for a, b in zip(values, values[1:])):
        raise argparse.ArgumentTypeError("counts must be positive and strictly increasing")
    return values


def _positive_int(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return value

    return parse


def _ratio(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("grading ratio must lie in (0, 1)")
    return value


def _add_quadrature_flags(p):
    defaults = QuadratureRule()
    p.add_argument("--gl-order", type=_positive_int(2), default=defaults.gl_order)
    p.add_argument("--grading-ratio", type=_ratio, default=defaults.grading_ratio)
    p.add_argument("--grading-depth", type=_positive_int(1), default=defaults.grading_depth)


def _add_output_flags(p, formats=True):
    if formats:
        p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--out", help="output path (default: standard output)")


def build_parser():
    parser = argparse.ArgumentParser(prog="fracgreen", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel-dump", help="kernel values on an equispaced grid as CSV")
    p.add_argument("--kernel", choices=[k.value for k in KernelKind], required=True)
    p.add_argument("--alpha", type=_alpha, default=2.0)
    p.add_argument("--grid", type=_positive_int(2), required=True)
    _add_output_flags(p, formats=False)

    p = sub.add_parser("interp", help="kernel interpolation convergence study")
    p.add_argument("--target", choices=("f1", "f2"), required=True)
    p.add_argument("--kernel", choices=[k.value for k in KernelKind], default="rl-left")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--nodes", choices=NODE_CHOICES, default="uniform")
    p.add_argument("--eval", choices=("full", "interior"), default="full")
    p.add_argument("--n", type=_count_list, default=(20, 40, 80, 160, 320))
    _add_output_flags(p)

    for name, helptext in (("bvp", "two-point boundary value study"), ("diffusion", "fractional diffusion study")):
        p = sub.add_parser(name, help=helptext)
        if name == "bvp":
            p.add_argument("--problem", choices=("left", "right"), required=True)
        else:
            p.add_argument("--t0", type=float, default=0.0)
            p.add_argument("--t1", type=float, default=1.0)
            p.add_argument("--coeff-dump", help="write per-step coefficients of the last cell as CSV")
        p.add_argument("--alpha", type=_alpha, required=True)
        p.add_argument(
            "--nodes",
            choices=NODE_CHOICES + ("all",),
            default="uniform",
            help="'all' runs uniform, uniform-interior and Chebyshev blocks side by side (markdown only)",
        )
        p.add_argument("--eval", choices=("full", "interior"), default="full")
        p.add_argument("--n", type=_count_list, default=(20, 40, 80, 160, 320))
        p.add_argument("--solution-out", help="write x, u_N, u_exact, error of the last cell as CSV")
        _add_quadrature_flags(p)
        _add_output_flags(p)

    sub.add_parser("selftest", help="run the built-in oracle checks")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kernel_dump(args):
    spec = KernelSpec(KernelKind(args.kernel), args.alpha)
    grid = kernel_grid(spec, args.grid, args.grid)
    buf = io.StringIO()
    for row in grid:
        buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
    _emit(buf.getvalue(), args.out)


def _study_configs(args, benchmark):
    rule = None
    if hasattr(args, "gl_order"):
        rule = QuadratureRule(args.gl_order, args.grading_ratio, args.grading_depth)
    extra = {"rule": rule} if rule is not None else {}
    if benchmark == "diffusion":
        if not args.t1 > args.t0:
            raise ValueError("--t1 must exceed --t0")
        extra.update(t0=args.t0, t1=args.t1)
    if getattr(args, "target", None):
        extra["kernel"] = KernelSpec(KernelKind(args.kernel), args.alpha)
    if args.nodes == "all":
        blocks = ALL_BLOCKS
    else:
        blocks = ((args.nodes.capitalize(), args.nodes, args.eval),)
    return [
        (title, StudyConfig(benchmark, args.alpha, node_kind=kind, n_list=args.n, eval_domain=dom, **extra))
        for title, kind, dom in blocks
    ]


def _write_extras(args, config):
    solution_out = getattr(args, "solution_out", None)
    coeff_dump = getattr(args, "coeff_dump", None)
    if not (solution_out or coeff_dump):
        return
    n = config.n_list[-1]
    if coeff_dump:
        bench = config.bench
        problem = DiffusionProblem(
            config.operator_kernel(),
            source=lambda x, t: bench.source(config.alpha, x, t),
            initial=bench.initial,
            t0=config.t0,
            t1=config.t1,
            nt=n,
        )
        nodes = make_nodes(config.node_kind, n)
        coeffs = crank_nicolson(problem, nodes, config.rule, mass=assemble_mass(problem.spec, nodes, config.rule))
        buf = io.StringIO()
        buf.write("step,t," + ",".join(f"c{j + 1}" for j in range(n)) + "\n")
        for k, c in enumerate(coeffs):
            t = config.t0 + k * problem.tau
            buf.write(f"{k},{t:.17g}," + ",".join(f"{v:.17g}" for v in c) + "\n")
        _emit(buf.getvalue(), coeff_dump)
        if solution_out:
            s = Interpolant(basis_kernel(problem.spec), nodes, coeffs[-1])
            _emit(solution_csv(s, lambda x: bench.exact(x, config.t1)), solution_out)
        return
    s, exact = solve_cell(config, n)
    _emit(solution_csv(s, exact), solution_out)


def _study(args, benchmark):
    if args.nodes == "all" and args.format != "markdown":
        raise _UsageError("--nodes all requires --format markdown")
    configs = _study_configs(args, benchmark)
    results = {title: run_study(cfg) for title, cfg in configs}
    if args.format == "csv":
        rows = results[configs[0][0]]
        text = rows_to_csv(rows)
        if len(rows) >= 2:
            slope = fitted_slope([r.h for r in rows], [r.error for r in rows])
            print(f"least-squares slope: {slope:.4f}", file=sys.stderr)
    elif len(configs) == 1:
        title, cfg = configs[0]
        text = rows_to_markdown(results[title], f"{benchmark}, alpha = {cfg.alpha:g}, {title}, {cfg.eval_domain.value}")
    else:
        text = side_by_side_markdown(results, f"{benchmark}, alpha = {args.alpha:g}")
    _emit(text, args.out)
    _write_extras(args, configs[-1][1])


class _UsageError(Exception):
    pass


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    log.debug("backend: %s", _accel.backend_name())
    try:
        if args.command == "kernel-dump":
            _kernel_dump(args)
        elif args.command == "interp":
            _study(args, args.target)
        elif args.command == "bvp":
            _study(args, f"bvp-{args.problem}")
        elif args.command == "diffusion":
            _study(args, "diffusion")
        elif args.command == "selftest":
            return 0 if run_selftest(sys.stdout) else 1
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fracgreen: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"fracgreen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
