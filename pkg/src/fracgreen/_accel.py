"""Hot loops: kernel evaluation and pairwise mass-matrix quadrature.

Each kernel exists twice, as a numba ``@njit`` loop and as a pure-numpy
vectorised routine.  The numba path is used when numba imports and the
environment variable ``FRACGREEN_DISABLE_NUMBA`` is unset or ``0``.  Both
paths are always importable so they can be compared directly.

Kernel kinds are passed as small integer codes (see ``KernelSpec.code`` in
:mod:`fracgreen.kernels`):

    0  Brownian bridge            min(x, z) - x z
    1  left Riemann-Liouville
    2  right Riemann-Liouville    left kernel at (1 - x, 1 - z)
    3  Caputo
    4  Caputo, arguments swapped
"""

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("FRACGREEN_DISABLE_NUMBA", "0") in ("", "0")

# smallest graded panel toward a point t is kept >= RESOLUTION * |t| so that
# Gauss nodes stay distinguishable from t in double precision
RESOLUTION = 2.0**-40


def backend_name():
    return "numba" if USE_NUMBA else "numpy"


def _identity_decorator(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


if NUMBA_AVAILABLE:
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the bundled TBB is often too old; workqueue is always present
        numba.config.THREADING_LAYER = "workqueue"
    njit = numba.njit
    prange = numba.prange
else:  # pragma: no cover
    njit = _identity_decorator
    prange = range


# ---------------------------------------------------------------- numba path


@njit(cache=True, inline="always")
def _pow0(t, p):
    if t <= 0.0:
        return 0.0
    return t**p


@njit(cache=True)
def _kernel_scalar_nb(kind, a1, inv_g, x, z):
    if kind == 0:
        return min(x, z) - x * z
    if kind == 2:
        x, z = 1.0 - x, 1.0 - z
        kind = 1
    elif kind == 4:
        x, z = z, x
        kind = 3
    if kind == 1:
        if z <= x:
            return (_pow0(x * (1.0 - z), a1) - _pow0(x - z, a1)) * inv_g
        return _pow0(x, a1) * _pow0(1.0 - z, a1) * inv_g
    # Caputo
    if z <= x:
        return (x * _pow0(1.0 - z, a1) - _pow0(x - z, a1)) * inv_g
    return x * _pow0(1.0 - z, a1) * inv_g


@njit(cache=True)
def kernel_values_nb(kind, alpha, x, z):
    a1 = alpha - 1.0
    inv_g = 1.0 / math.gamma(alpha)
    out = np.empty(x.size)
    for k in range(x.size):
        out[k] = _kernel_scalar_nb(kind, a1, inv_g, x[k], z[k])
    return out


@njit(cache=True)
def _outer_canonical_nb(caputo, a1, inv_g, x, z):
    # left RL (caputo=False) or Caputo kernel; the separable tail is hoisted
    px = np.empty(x.size)
    pz = np.empty(z.size)
    for i in range(x.size):
        px[i] = x[i] if caputo else _pow0(x[i], a1)
    for j in range(z.size):
        pz[j] = _pow0(1.0 - z[j], a1)
    out = np.empty((x.size, z.size))
    for i in range(x.size):
        for j in range(z.size):
            v = px[i] * pz[j]
            if z[j] < x[i]:
                v -= (x[i] - z[j]) ** a1
            out[i, j] = v * inv_g
    return out


@njit(cache=True)
def kernel_outer_nb(kind, alpha, x, z):
    if kind == 0:
        out = np.empty((x.size, z.size))
        for i in range(x.size):
            for j in range(z.size):
                out[i, j] = min(x[i], z[j]) - x[i] * z[j]
        return out
    a1 = alpha - 1.0
    inv_g = 1.0 / math.gamma(alpha)
    if kind == 1:
        return _outer_canonical_nb(False, a1, inv_g, x, z)
    if kind == 2:
        return _outer_canonical_nb(False, a1, inv_g, 1.0 - x, 1.0 - z)
    if kind == 3:
        return _outer_canonical_nb(True, a1, inv_g, x, z)
    return np.ascontiguousarray(_outer_canonical_nb(True, a1, inv_g, z, x).T)


@njit(cache=True)
def _half_levels(t, length, levels):
    # number of geometric levels toward t that remain resolvable
    n = 0
    for k in range(levels.size):
        if length * levels[k] >= RESOLUTION * abs(t):
            n = k + 1
        else:
            break
    return n


@njit(cache=True)
def _segment_sum_nb(kind, a1, inv_g, xi, xj, a, b, gx, gw, levels):
    """Graded Gauss-Legendre sum of K(x, xi) K(x, xj) over [a, b]."""
    m = 0.5 * (a + b)
    total = 0.0
    # left half: panels toward a, from innermost outward
    n = _half_levels(a, m - a, levels)
    lo = a
    for k in range(n, -1, -1):
        hi = m if k == 0 else a + (m - a) * levels[k - 1]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for q in range(gx.size):
            x = half * gx[q] + mid
            total += half * gw[q] * _kernel_scalar_nb(kind, a1, inv_g, x, xi) * _kernel_scalar_nb(
                kind, a1, inv_g, x, xj
            )
        lo = hi
    # right half: panels toward b, from m inward
    n = _half_levels(b, b - m, levels)
    lo = m
    for k in range(0, n + 1):
        hi = b if k == n else b - (b - m) * levels[k]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for q in range(gx.size):
            x = half * gx[q] + mid
            total += half * gw[q] * _kernel_scalar_nb(kind, a1, inv_g, x, xi) * _kernel_scalar_nb(
                kind, a1, inv_g, x, xj
            )
        lo = hi
    return total


@njit(cache=True, parallel=True)
def mass_matrix_nb(kind, alpha, nodes, gx, gw, levels):
    n = nodes.size
    a1 = alpha - 1.0
    inv_g = 1.0 / math.gamma(alpha)
    out = np.zeros((n, n))
    for i in prange(n):
        xi = nodes[i]
        for j in range(i, n):
            xj = nodes[j]
            lo_bp = min(xi, xj)
            hi_bp = max(xi, xj)
            s = _segment_sum_nb(kind, a1, inv_g, xi, xj, 0.0, lo_bp, gx, gw, levels)
            if hi_bp > lo_bp:
                s += _segment_sum_nb(kind, a1, inv_g, xi, xj, lo_bp, hi_bp, gx, gw, levels)
            s += _segment_sum_nb(kind, a1, inv_g, xi, xj, hi_bp, 1.0, gx, gw, levels)
            out[i, j] = s
    for i in range(n):
        for j in range(i + 1, n):
            out[j, i] = out[i, j]
    return out


# ---------------------------------------------------------------- numpy path


def _pow0_np(t, p):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0.0
    out[pos] = t[pos] ** p
    return out


def kernel_values_np(kind, alpha, x, z):
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if kind == 0:
        return np.minimum(x, z) - x * z
    if kind == 2:
        x, z, kind = 1.0 - x, 1.0 - z, 1
    elif kind == 4:
        x, z, kind = z, x, 3
    a1 = alpha - 1.0
    inv_g = 1.0 / math.gamma(alpha)
    lower = z <= x
    if kind == 1:
        below = _pow0_np(x * (1.0 - z), a1) - _pow0_np(x - z, a1)
        above = _pow0_np(x, a1) * _pow0_np(1.0 - z, a1)
    else:
        tail = x * _pow0_np(1.0 - z, a1)
        below = tail - _pow0_np(x - z, a1)
        above = tail
    return np.where(lower, below, above) * inv_g


def kernel_outer_np(kind, alpha, x, z):
    return kernel_values_np(kind, alpha, x[:, None], z[None, :])


def graded_edges(breakpoints, levels):
    """Panel edges on [0, 1]: split at breakpoints, then grade toward every one.

    Each segment [a, b] is halved; the left half is subdivided geometrically
    toward a and the right half toward b, using the scale factors in ``levels``
    (ratio**1, ratio**2, ...).
    """
    pts = [0.0, *breakpoints, 1.0]
    edges = [0.0]
    for a, b in zip(pts[:-1], pts[1:]):
        m = 0.5 * (a + b)
        n = _n_levels(a, m - a, levels)
        edges.extend(a + (m - a) * levels[k] for k in range(n - 1, -1, -1))
        edges.append(m)
        n = _n_levels(b, b - m, levels)
        edges.extend(b - (b - m) * levels[k] for k in range(n))
        edges.append(b)
    return np.asarray(edges)


def _n_levels(t, length, levels):
    n = 0
    for k in range(len(levels)):
        if length * levels[k] >= RESOLUTION * abs(t):
            n = k + 1
        else:
            break
    return n


def panel_points(edges, gx, gw):
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (half[:, None] * gx[None, :] + mid[:, None]).ravel()
    w = (half[:, None] * gw[None, :]).ravel()
    return x, w


def mass_matrix_np(kind, alpha, nodes, gx, gw, levels):
    n = nodes.size
    out = np.zeros((n, n))
    for i in range(n):
        xi = nodes[i]
        xs, ws, owners = [], [], []
        for j in range(i, n):
            bps = sorted({xi, nodes[j]})
            x, w = panel_points(graded_edges(bps, levels), gx, gw)
            xs.append(x)
            ws.append(w)
            owners.append(x.size)
        x = np.concatenate(xs)
        w = np.concatenate(ws)
        zj = np.repeat(nodes[i:], owners)
        vals = w * kernel_values_np(kind, alpha, x, np.full_like(x, xi)) * kernel_values_np(kind, alpha, x, zj)
        starts = np.concatenate(([0], np.cumsum(owners)[:-1]))
        out[i, i:] = np.add.reduceat(vals, starts)
    iu = np.triu_indices(n, 1)
    out[(iu[1], iu[0])] = out[iu]
    return out


# ---------------------------------------------------------------- dispatch


def kernel_values(kind, alpha, x, z):
    """Elementwise kernel values for broadcastable ``x`` and ``z``."""
    x, z = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(z, dtype=float))
    if not USE_NUMBA:
        return kernel_values_np(kind, alpha, x, z)
    shape = x.shape
    out = kernel_values_nb(kind, float(alpha), np.ascontiguousarray(x).ravel(), np.ascontiguousarray(z).ravel())
    return out.reshape(shape)


def kernel_outer(kind, alpha, x, z):
    x = np.ascontiguousarray(x, dtype=float).ravel()
    z = np.ascontiguousarray(z, dtype=float).ravel()
    if USE_NUMBA:
        return kernel_outer_nb(kind, float(alpha), x, z)
    return kernel_outer_np(kind, alpha, x, z)


def mass_matrix(kind, alpha, nodes, gx, gw, levels):
    nodes = np.ascontiguousarray(nodes, dtype=float)
    if USE_NUMBA:
        return mass_matrix_nb(kind, float(alpha), nodes, gx, gw, levels)
    return mass_matrix_np(kind, alpha, nodes, gx, gw, levels)
