"""Closed-form fractional Green's kernels on [0, 1].

All kernels vanish at x = 0 and x = 1.  The left Riemann-Liouville kernel is

    G(x, z) = [(x (1 - z))^(a-1) - (x - z)^(a-1)] / Gamma(a)   for z <= x
    G(x, z) = x^(a-1) (1 - z)^(a-1) / Gamma(a)                 for x <= z

and reduces to the Brownian bridge ``min(x, z) - x z`` at ``a = 2``.  The
right kernel is the reflection ``G(1 - x, 1 - z)``, which coincides with the
transpose ``G(z, x)`` of the left kernel.
"""

import enum
from dataclasses import dataclass

import numpy as np

from fracgreen import _accel
from fracgreen.fractional_core import check_order

__all__ = ["KernelKind", "KernelSpec", "adjoint", "eval_kernel", "kernel_grid", "kernel_matrix"]


class KernelKind(enum.Enum):
    BROWNIAN_BRIDGE = "bb"
    RL_LEFT = "rl-left"
    RL_RIGHT = "rl-right"
    CAPUTO = "caputo"


@dataclass(frozen=True)
class KernelSpec:
    """Which Green's kernel, and its order.

    ``transposed`` swaps the two arguments.  It is only needed for the
    Caputo adjoint; the Riemann-Liouville kernels are each other's transpose.
    """

    kind: KernelKind
    alpha: float = 2.0
    transposed: bool = False

    def __post_init__(self):
        kind = KernelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is KernelKind.BROWNIAN_BRIDGE:
            object.__setattr__(self, "alpha", 2.0)
        else:
            object.__setattr__(self, "alpha", check_order(self.alpha))

    @property
    def code(self):
        if self.kind is KernelKind.CAPUTO:
            return 4 if self.transposed else 3
        base = {KernelKind.BROWNIAN_BRIDGE: 0, KernelKind.RL_LEFT: 1, KernelKind.RL_RIGHT: 2}[self.kind]
        if self.transposed and self.kind is not KernelKind.BROWNIAN_BRIDGE:
            return 3 - base  # left <-> right
        return base

    @property
    def label(self):
        name = self.kind.value + ("^T" if self.transposed else "")
        if self.kind is KernelKind.BROWNIAN_BRIDGE:
            return name
        return f"{name}(alpha={self.alpha:g})"


def adjoint(spec):
    """Kernel with swapped arguments, K*(x, z) = K(z, x), in canonical form."""
    if spec.kind is KernelKind.BROWNIAN_BRIDGE:
        return spec
    if spec.kind is KernelKind.RL_LEFT:
        return KernelSpec(KernelKind.RL_RIGHT, spec.alpha)
    if spec.kind is KernelKind.RL_RIGHT:
        return KernelSpec(KernelKind.RL_LEFT, spec.alpha)
    return KernelSpec(KernelKind.CAPUTO, spec.alpha, transposed=not spec.transposed)


def eval_kernel(spec, x, z):
    """Kernel value K(x, z); ``x`` and ``z`` broadcast against each other."""
    out = _accel.kernel_values(spec.code, spec.alpha, x, z)
    return out[()] if out.ndim == 0 else out


def kernel_matrix(spec, x, z):
    """Matrix ``M[i, j] = K(x[i], z[j])``."""
    return _accel.kernel_outer(spec.code, spec.alpha, x, z)


def kernel_grid(spec, nx, nz):
    """Kernel on an equispaced (nx, nz) grid over [0, 1] x [0, 1], endpoints included."""
    if nx < 2 or nz < 2:
        raise ValueError("kernel grid needs at least 2 points per axis")
    return kernel_matrix(spec, np.linspace(0.0, 1.0, nx), np.linspace(0.0, 1.0, nz))
