"""Benchmark functions and problems with known exact solutions.

Every forcing term is assembled from :mod:`fracgreen.fractional_core`
monomial derivatives, so the same primitives back both the problems and the
residual checks in the test-suite.
"""

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from fracgreen.fractional_core import rl_left_monomial, rl_right_for_problem2

__all__ = [
    "BENCHMARKS",
    "Benchmark",
    "BenchmarkKind",
    "bvp_exact",
    "diffusion_exact",
    "diffusion_initial",
    "diffusion_source",
    "f1",
    "f2",
    "problem1_forcing",
    "problem2_forcing",
]


def f1(x):
    x = np.asarray(x, dtype=float)
    return np.sin(0.5 * np.pi * x) * x * (1.0 - x)


def f2(x):
    x = np.asarray(x, dtype=float)
    return np.cos(0.5 * np.pi * x) * x * (1.0 - x)


def bvp_exact(x):
    """u(x) = x - x^2, the exact solution of both two-point benchmarks."""
    x = np.asarray(x, dtype=float)
    return x - x * x


def problem1_forcing(alpha, x):
    """f = -0D_x^alpha (x - x^2) for the left-sided benchmark; singular at x = 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("problem 1 forcing is unbounded at x = 0")
    return -rl_left_monomial(1.0, alpha, x) + rl_left_monomial(2.0, alpha, x)


def problem2_forcing(alpha, x):
    return rl_right_for_problem2(alpha, x)


def diffusion_exact(x, t):
    x = np.asarray(x, dtype=float)
    return np.exp(-t) * (x - x**4)


def diffusion_initial(x):
    x = np.asarray(x, dtype=float)
    return x - x**4


def diffusion_source(alpha, x, t):
    """q = du/dt - 0D_x^alpha u for u = exp(-t) (x - x^4)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("diffusion source is unbounded at x = 0")
    frac = rl_left_monomial(1.0, alpha, x) - rl_left_monomial(4.0, alpha, x)
    return -np.exp(-t) * ((x - x**4) + frac)


class BenchmarkKind(enum.Enum):
    INTERPOLATION = "interpolation"
    BVP = "bvp"
    DIFFUSION = "diffusion"


@dataclass(frozen=True)
class Benchmark:
    """A named benchmark.

    ``target`` is the interpolated function, ``forcing(alpha, x)`` the BVP
    right-hand side, ``source(alpha, x, t)`` the diffusion source.  ``side``
    names the Riemann-Liouville operator for BVP and diffusion problems.
    """

    name: str
    kind: BenchmarkKind
    target: Optional[Callable] = None
    forcing: Optional[Callable] = None
    source: Optional[Callable] = None
    initial: Optional[Callable] = None
    exact: Optional[Callable] = None
    side: Optional[str] = None


BENCHMARKS = {
    "f1": Benchmark("f1", BenchmarkKind.INTERPOLATION, target=f1, exact=f1),
    "f2": Benchmark("f2", BenchmarkKind.INTERPOLATION, target=f2, exact=f2),
    "bvp-left": Benchmark("bvp-left", BenchmarkKind.BVP, forcing=problem1_forcing, exact=bvp_exact, side="left"),
    "bvp-right": Benchmark("bvp-right", BenchmarkKind.BVP, forcing=problem2_forcing, exact=bvp_exact, side="right"),
    "diffusion": Benchmark(
        "diffusion",
        BenchmarkKind.DIFFUSION,
        source=diffusion_source,
        initial=diffusion_initial,
        exact=diffusion_exact,
        side="left",
    ),
}
