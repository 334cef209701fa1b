"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_backends.py [--sizes 40,80,160] [--repeat 3]

Both code paths live in fracgreen._accel and are called directly, so one run
compares them regardless of FRACGREEN_DISABLE_NUMBA.  Results are checked
for agreement before timings are reported.
"""

import argparse
import time

import numpy as np

from fracgreen import _accel
from fracgreen.interpolation import chebyshev_nodes
from fracgreen.kernels import KernelKind, KernelSpec
from fracgreen.quadrature import DEFAULT_RULE


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="40,80,160")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--alpha", type=float, default=1.5)
    args = parser.parse_args()

    if not _accel.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")

    spec = KernelSpec(KernelKind.RL_RIGHT, args.alpha)
    gx, gw = DEFAULT_RULE.gauss
    levels = DEFAULT_RULE.levels

    # compile outside the timed region
    x = chebyshev_nodes(4).points
    _accel.kernel_outer_nb(spec.code, spec.alpha, x, x)
    _accel.mass_matrix_nb(spec.code, spec.alpha, x, gx, gw, levels)

    print(f"{'op':<14}{'N':>6}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>9}{'max rel diff':>14}")
    for n in (int(v) for v in args.sizes.split(",")):
        x = chebyshev_nodes(n).points
        grid = np.linspace(0.0, 1.0, 1000)
        cases = {
            "kernel_outer": (
                lambda: _accel.kernel_outer_nb(spec.code, spec.alpha, grid, x),
                lambda: _accel.kernel_outer_np(spec.code, spec.alpha, grid, x),
            ),
            "mass_matrix": (
                lambda: _accel.mass_matrix_nb(spec.code, spec.alpha, x, gx, gw, levels),
                lambda: _accel.mass_matrix_np(spec.code, spec.alpha, x, gx, gw, levels),
            ),
        }
        for name, (fast, slow) in cases.items():
            t_nb, a = best_of(fast, args.repeat)
            t_np, b = best_of(slow, args.repeat)
            diff = np.abs(a - b).max() / np.abs(b).max()
            print(f"{name:<14}{n:>6}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>9.1f}{diff:>14.2e}")


if __name__ == "__main__":
    main()
