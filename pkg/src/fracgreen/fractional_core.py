"""Gamma function and closed-form fractional derivatives of shifted monomials."""

import math

import numpy as np
from scipy.special import rgamma

__all__ = [
    "check_order",
    "gamma_fn",
    "rgamma",
    "rl_left_monomial",
    "rl_right_monomial",
    "rl_right_for_problem2",
]


def check_order(alpha):
    """Validate a kernel order, which must lie in (1, 2]."""
    alpha = float(alpha)
    if not (1.0 < alpha <= 2.0) or not math.isfinite(alpha):
        raise ValueError(f"fractional order must satisfy 1 < alpha <= 2, got {alpha!r}")
    return alpha


def gamma_fn(x):
    """Gamma function for positive real arguments."""
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"gamma_fn is defined here for x > 0 only, got {x!r}")
    return math.gamma(x)


def rl_left_monomial(gamma_exp, alpha, x):
    r"""Left Riemann-Liouville derivative of :math:`x^\gamma` based at 0.

    .. math::

        {}_0D_x^\alpha x^\gamma = \frac{\Gamma(\gamma + 1)}{\Gamma(\gamma + 1 - \alpha)} x^{\gamma - \alpha}

    The reciprocal gamma vanishes at non-positive integers, so classical
    cases such as the second derivative of ``x`` come out as exactly zero.
    """
    x = np.asarray(x, dtype=float)
    coeff = math.gamma(gamma_exp + 1.0) * float(rgamma(gamma_exp + 1.0 - alpha))
    if gamma_exp < alpha and coeff != 0.0 and np.any(x <= 0.0):
        raise ValueError("left monomial derivative is unbounded at x = 0")
    with np.errstate(divide="ignore"):
        out = coeff * x ** (gamma_exp - alpha)
    return out[()] if out.ndim == 0 else out


def rl_right_monomial(gamma_exp, alpha, x):
    r"""Right Riemann-Liouville derivative of :math:`(1 - x)^\gamma` based at 1."""
    x = np.asarray(x, dtype=float)
    return rl_left_monomial(gamma_exp, alpha, 1.0 - x)


def rl_right_for_problem2(alpha, x):
    r"""Forcing :math:`f = -{}_xD_1^\alpha (x - x^2)` of the right-sided benchmark.

    Written through :math:`x - x^2 = (1 - x) - (1 - x)^2`, which avoids the
    cancellation of the two :math:`(1-x)^{-\alpha}` terms in the expanded form.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x >= 1.0):
        raise ValueError("problem 2 forcing is unbounded at x = 1")
    out = -rl_right_monomial(1.0, alpha, x) + rl_right_monomial(2.0, alpha, x)
    return out[()] if np.ndim(out) == 0 else out
