"""Kernel Galerkin solvers for fractional two-point problems and diffusion.

For an operator L with Green's kernel G (so that ``L_x G(x, z) = delta(x - z)``
and u = integral of G(x, z) f(z) dz solves ``L u = f``) the trial and test
space is spanned by the adjoint translates

    phi_j(x) = G(x_j, x) = G*(x, x_j).

These are Green's functions of the adjoint operator, so
``<L phi_j, phi_i> = <phi_j, L* phi_i> = phi_j(x_i)``: the stiffness matrix is
the kernel matrix of G* and no fractional derivative is ever evaluated.
In terms of the basis kernel K = G* the discrete problems read

    BVP:        K c = f,                     f_i = int f(x) K(x, x_i) dx
    diffusion:  (A + tau/2 K) c^{n+1} = (A - tau/2 K) c^n + tau f^{n+1/2},
                A_ij = int K(x, x_i) K(x, x_j) dx

with K[i, j] = K(x_i, x_j).  Since f_i = u(x_i), the BVP solution is the
kernel interpolant of the exact solution at the centres.

Problems carry the operator's own kernel: the left Riemann-Liouville kernel
for ``-0D_x^alpha`` and the right kernel for ``-xD_1^alpha``.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from fracgreen import _accel
from fracgreen.dense_linear import lu_factor_cached, lu_solve
from fracgreen.interpolation import Interpolant, NodeSet
from fracgreen.kernels import KernelSpec, adjoint, eval_kernel, kernel_matrix
from fracgreen.quadrature import DEFAULT_RULE, QuadratureError, integrate, rule_points

__all__ = [
    "BvpProblem",
    "DiffusionProblem",
    "LoadOperator",
    "assemble_load",
    "assemble_mass",
    "basis_kernel",
    "crank_nicolson",
    "greens_reproduction",
    "solve_bvp",
    "stiffness_matrix",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BvpProblem:
    """``L u = f`` on (0, 1) with u(0) = u(1) = 0; ``spec`` is the Green's kernel of L."""

    spec: KernelSpec
    forcing: Callable
    exact: Optional[Callable] = None


@dataclass(frozen=True)
class DiffusionProblem:
    """``u_t + L u = q`` with u(x, t0) = g(x), homogeneous Dirichlet data, unit diffusivity."""

    spec: KernelSpec
    source: Callable  # q(x, t)
    initial: Callable  # g(x)
    t0: float = 0.0
    t1: float = 1.0
    nt: int = 1
    exact: Optional[Callable] = None  # u(x, t)

    def __post_init__(self):
        if int(self.nt) < 1:
            raise ValueError("nt must be >= 1")
        if not self.t1 > self.t0:
            raise ValueError("t1 must exceed t0")
        object.__setattr__(self, "nt", int(self.nt))

    @property
    def tau(self):
        return (self.t1 - self.t0) / self.nt


def basis_kernel(spec):
    """Kernel whose translates K(., x_j) span the Galerkin space for operator kernel ``spec``."""
    return adjoint(spec)


def _points(nodes):
    return nodes.points if isinstance(nodes, NodeSet) else np.asarray(nodes, dtype=float)


class LoadOperator:
    """Precomputed quadrature for the load integrals int f(x) K(x, x_i) dx.

    Each centre gets its own graded rule with x_i as breakpoint.  Nodes and
    kernel-weighted weights are stored flat, so a load vector costs one
    vectorised evaluation of ``f`` and one segmented sum.
    """

    def __init__(self, kernel, nodes, rule=DEFAULT_RULE):
        xs, wk, counts = [], [], []
        for xi in _points(nodes):
            x, w = rule_points(rule, [xi])
            xs.append(x)
            wk.append(w * eval_kernel(kernel, x, xi))
            counts.append(x.size)
        self.kernel = kernel
        self.x = np.concatenate(xs)
        self.weights = np.concatenate(wk)
        self.starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        self.x.setflags(write=False)

    def __len__(self):
        return self.starts.size

    def apply(self, values):
        values = np.asarray(values, dtype=float)
        if values.shape != self.x.shape:
            values = np.broadcast_to(values, self.x.shape)
        if not np.all(np.isfinite(values)):
            bad = self.x[~np.isfinite(values)][0]
            raise QuadratureError(f"load integrand is not finite at x = {bad!r}")
        return np.add.reduceat(self.weights * values, self.starts)

    def __call__(self, f):
        return self.apply(f(self.x))


def assemble_load(forcing, spec, nodes, rule=DEFAULT_RULE):
    """Load vector f_i = int forcing(x) K(x, x_i) dx with K the basis kernel of ``spec``."""
    return LoadOperator(basis_kernel(spec), nodes, rule)(forcing)


def stiffness_matrix(spec, nodes):
    """Galerkin matrix K(x_i, x_j) of the basis kernel; pure kernel evaluation."""
    x = _points(nodes)
    return kernel_matrix(basis_kernel(spec), x, x)


def solve_bvp(problem, nodes, rule=DEFAULT_RULE):
    load = assemble_load(problem.forcing, problem.spec, nodes, rule)
    coeffs = lu_solve(stiffness_matrix(problem.spec, nodes), load)
    return Interpolant(basis_kernel(problem.spec), nodes, coeffs)


def greens_reproduction(problem, rule=DEFAULT_RULE, test_points=None):
    """max |int G(x, z) f(z) dz - u(x)| over the test points."""
    if problem.exact is None:
        raise ValueError("Green's reproduction needs an exact solution")
    if test_points is None:
        test_points = np.linspace(0.0, 1.0, 13)[1:-1]
    worst = 0.0
    for x in np.atleast_1d(np.asarray(test_points, dtype=float)):
        bps = [x] if 0.0 < x < 1.0 else []
        val = integrate(lambda z: eval_kernel(problem.spec, x, z) * problem.forcing(z), rule, bps)
        worst = max(worst, abs(val - float(problem.exact(x))))
    return worst


def assemble_mass(spec, nodes, rule=DEFAULT_RULE):
    """Mass matrix A_ij = int K(x, x_i) K(x, x_j) dx for the basis kernel of ``spec``.

    One graded quadrature per pair i <= j with breakpoints {x_i, x_j}; the
    lower triangle is mirrored, so A is exactly symmetric.
    """
    kernel = basis_kernel(spec)
    gx, gw = rule.gauss
    return _accel.mass_matrix(kernel.code, kernel.alpha, _points(nodes), gx, gw, rule.levels)


def crank_nicolson(problem, nodes, rule=DEFAULT_RULE, mass=None):
    """March the Galerkin Crank-Nicolson scheme; returns coefficients c^0..c^nt as rows.

    c^0 interpolates the initial data at the centres.  The source vector of
    step n is evaluated at the midpoint time t0 + tau (n + 1/2).
    """
    tau = problem.tau
    K = stiffness_matrix(problem.spec, nodes)
    A = assemble_mass(problem.spec, nodes, rule) if mass is None else mass
    load = LoadOperator(basis_kernel(problem.spec), nodes, rule)

    x = _points(nodes)
    coeffs = np.empty((problem.nt + 1, x.size))
    coeffs[0] = lu_solve(K, problem.initial(x))
    lhs = lu_factor_cached(A + 0.5 * tau * K)
    rhs = A - 0.5 * tau * K
    for n in range(problem.nt):
        t_half = problem.t0 + tau * (n + 0.5)
        f_half = load(lambda z: problem.source(z, t_half))
        coeffs[n + 1] = lhs.solve(rhs @ coeffs[n] + tau * f_half)
        log.debug("step %d t=%.6g |c|=%.6e", n + 1, problem.t0 + tau * (n + 1), np.abs(coeffs[n + 1]).max())
    return coeffs
