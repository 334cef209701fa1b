"""Composite Gauss-Legendre quadrature on [0, 1] with geometric grading.

Integrands here combine algebraic endpoint singularities such as
``x**(1 - alpha)`` with kernel kinks at interior points, where one side also
behaves like ``|x - z|**(alpha - 1)``.  The rule splits [0, 1] at the declared
breakpoints, halves every resulting segment, and grades each half
geometrically toward its outer end.  Gauss nodes are strictly interior to their
panel, so integrands may be singular at 0, 1 and the breakpoints.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fracgreen import _accel

__all__ = ["QuadratureError", "QuadratureRule", "gauss_legendre", "integrate", "rule_points"]


class QuadratureError(ArithmeticError):
    """Raised when an integrand returns a non-finite value at a quadrature node."""


@lru_cache(maxsize=None)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    n = int(n)
    if n < 1:
        raise ValueError("Gauss-Legendre order must be >= 1")
    x, w = _leggauss(n)
    return x.copy(), w.copy()


@dataclass(frozen=True)
class QuadratureRule:
    """Fixed composite rule; see the module docstring for the panel layout.

    ``abs_tol`` is the accuracy the defaults are tuned for.  It is not used
    at run time: the rule is not adaptive, which keeps results bit-deterministic.
    """

    gl_order: int = 16
    grading_ratio: float = 0.15
    grading_depth: int = 40
    abs_tol: float = 1e-10

    def __post_init__(self):
        if int(self.gl_order) < 2:
            raise ValueError("gl_order must be >= 2")
        if not 0.0 < self.grading_ratio < 1.0:
            raise ValueError("grading_ratio must lie in (0, 1)")
        if int(self.grading_depth) < 1:
            raise ValueError("grading_depth must be >= 1")
        if not self.abs_tol > 0.0:
            raise ValueError("abs_tol must be positive")
        object.__setattr__(self, "gl_order", int(self.gl_order))
        object.__setattr__(self, "grading_depth", int(self.grading_depth))

    @property
    def levels(self):
        return self.grading_ratio ** np.arange(1, self.grading_depth + 1, dtype=float)

    @property
    def gauss(self):
        return _leggauss(self.gl_order)


DEFAULT_RULE = QuadratureRule()


def _clean_breakpoints(breakpoints):
    bps = sorted({float(b) for b in np.atleast_1d(np.asarray(breakpoints, dtype=float))})
    if bps and (bps[0] <= 0.0 or bps[-1] >= 1.0):
        raise ValueError("breakpoints must lie strictly inside (0, 1)")
    return bps


def rule_points(rule=DEFAULT_RULE, breakpoints=()):
    """Quadrature nodes and weights on [0, 1], ordered left to right."""
    edges = _accel.graded_edges(_clean_breakpoints(breakpoints), rule.levels)
    gx, gw = rule.gauss
    return _accel.panel_points(edges, gx, gw)


def integrate(f, rule=DEFAULT_RULE, breakpoints=()):
    """Integrate ``f`` over [0, 1].

    ``f`` is called once with the array of all quadrature nodes and must
    return an array of the same shape.
    """
    x, w = rule_points(rule, breakpoints)
    vals = np.asarray(f(x), dtype=float)
    if vals.shape != x.shape:
        vals = np.broadcast_to(vals, x.shape)
    if not np.all(np.isfinite(vals)):
        bad = x[~np.isfinite(vals)][0]
        raise QuadratureError(f"integrand is not finite at x = {bad!r}")
    return float(np.sum(w * vals))
