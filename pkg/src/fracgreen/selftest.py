"""Quick oracle checks run by ``fracgreen selftest``."""

import numpy as np

from fracgreen import problems
from fracgreen.galerkin import BvpProblem, greens_reproduction
from fracgreen.kernels import KernelKind, KernelSpec, kernel_grid
from fracgreen.quadrature import QuadratureRule, gauss_legendre, integrate


def _check_gauss_exactness():
    worst = 0.0
    for n in (2, 4, 8, 16):
        x, w = gauss_legendre(n)
        for deg in range(2 * n):
            exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
            worst = max(worst, abs(w @ x**deg - exact))
    return worst <= 1e-13, f"max monomial error {worst:.2e}"


def _check_graded_singular():
    err = abs(integrate(lambda x: x**-0.5, QuadratureRule()) - 2.0)
    return err <= 1e-9, f"|int x^-1/2 - 2| = {err:.2e}"


def _check_alpha2_reduction():
    bb = kernel_grid(KernelSpec(KernelKind.BROWNIAN_BRIDGE), 101, 101)
    worst = 0.0
    for kind in (KernelKind.RL_LEFT, KernelKind.RL_RIGHT, KernelKind.CAPUTO):
        worst = max(worst, np.abs(kernel_grid(KernelSpec(kind, 2.0), 101, 101) - bb).max())
    return worst <= 1e-12, f"max deviation from Brownian bridge {worst:.2e}"


def _check_reproduction():
    worst = 0.0
    for alpha in (1.5, 1.75):
        left = BvpProblem(
            KernelSpec(KernelKind.RL_LEFT, alpha), lambda x, a=alpha: problems.problem1_forcing(a, x), problems.bvp_exact
        )
        right = BvpProblem(
            KernelSpec(KernelKind.RL_RIGHT, alpha), lambda x, a=alpha: problems.problem2_forcing(a, x), problems.bvp_exact
        )
        worst = max(worst, greens_reproduction(left), greens_reproduction(right))
    return worst <= 1e-6, f"max |int G f - u| = {worst:.2e}"


CHECKS = {
    "gauss-legendre exactness": _check_gauss_exactness,
    "graded endpoint singularity": _check_graded_singular,
    "alpha=2 kernel reductions": _check_alpha2_reduction,
    "green's reproduction (problems 1, 2)": _check_reproduction,
}


def run_selftest(out):
    failures = 0
    for name, check in CHECKS.items():
        try:
            ok, detail = check()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        failures += not ok
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}\n")
    return failures == 0
