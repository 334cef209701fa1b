"""Fractional Green's kernel interpolation and kernel Galerkin solvers on [0, 1]."""

from fracgreen.kernels import KernelKind, KernelSpec, eval_kernel, kernel_grid, kernel_matrix
from fracgreen.quadrature import QuadratureRule, QuadratureError, gauss_legendre, integrate
from fracgreen.dense_linear import SingularMatrixError, lu_factor_cached, lu_solve
from fracgreen.interpolation import (
    Interpolant,
    NodeSet,
    chebyshev_nodes,
    fill_distance,
    fit_interpolant,
    uniform_nodes,
)

__all__ = [
    "KernelKind",
    "KernelSpec",
    "eval_kernel",
    "kernel_grid",
    "kernel_matrix",
    "QuadratureRule",
    "QuadratureError",
    "gauss_legendre",
    "integrate",
    "SingularMatrixError",
    "lu_factor_cached",
    "lu_solve",
    "Interpolant",
    "NodeSet",
    "chebyshev_nodes",
    "fill_distance",
    "fit_interpolant",
    "uniform_nodes",
]

__version__ = "0.1.0"
