"""Dense LU with partial pivoting for the non-symmetric kernel systems.

Backed by LAPACK (``getrf``/``getrs``/``gecon`` via scipy).  Kernel matrices
from non-symmetric Green's kernels are not positive definite, so no Cholesky
shortcut is taken.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lapack, lu_factor, lu_solve as _lu_solve

__all__ = ["Factorization", "SingularMatrixError", "lu_factor_cached", "lu_solve", "solve_with"]

log = logging.getLogger(__name__)

PIVOT_RTOL = 1e-14
COND_WARN = 1e12


class SingularMatrixError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class Factorization:
    lu: np.ndarray
    piv: np.ndarray
    rcond: float

    @property
    def n(self):
        return self.lu.shape[0]

    def solve(self, b):
        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.n:
            raise ValueError(f"right-hand side has length {b.shape[0]}, expected {self.n}")
        return _lu_solve((self.lu, self.piv), b, check_finite=False)


def lu_factor_cached(a):
    """Factor ``a`` once for repeated solves."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = np.abs(a).max() if a.size else 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)  # exact zero pivots are reported below
        lu, piv = lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if scale == 0.0 or pivots.min() < PIVOT_RTOL * scale:
        raise SingularMatrixError(
            f"matrix is numerically singular (smallest pivot {pivots.min():.3e}, max entry {scale:.3e})"
        )
    anorm = np.abs(a).sum(axis=0).max()
    rcond, _ = lapack.dgecon(lu, anorm, norm="1")
    if rcond * COND_WARN < 1.0:
        log.warning("kernel system is ill-conditioned: cond_1 ~ %.3e (n=%d)", 1.0 / max(rcond, 1e-300), a.shape[0])
    lu.setflags(write=False)
    piv.setflags(write=False)
    return Factorization(lu, piv, float(rcond))


def solve_with(fac, b):
    return fac.solve(b)


def lu_solve(a, b):
    """Solve ``a c = b``; raises :class:`SingularMatrixError` on a vanishing pivot."""
    return lu_factor_cached(a).solve(b)
