"""Sampling centres, fill distance, and kernel interpolants s(x) = sum_j c_j K(x, x_j)."""

import enum
import io
from dataclasses import dataclass

import numpy as np

from fracgreen.dense_linear import lu_solve
from fracgreen.kernels import KernelSpec, kernel_matrix

__all__ = [
    "EVAL_GRID",
    "Interpolant",
    "NodeKind",
    "NodeSet",
    "chebyshev_nodes",
    "explicit_nodes",
    "eval_interpolant",
    "fill_distance",
    "fit_interpolant",
    "make_nodes",
    "uniform_nodes",
]

# error-study evaluation grid: 1000 equispaced points including both endpoints
EVAL_GRID = np.linspace(0.0, 1.0, 1000)
EVAL_GRID.setflags(write=False)


class NodeKind(enum.Enum):
    UNIFORM = "uniform"
    CHEBYSHEV = "chebyshev"
    EXPLICIT = "explicit"


@dataclass(frozen=True, eq=False)
class NodeSet:
    points: np.ndarray
    kind: NodeKind = NodeKind.EXPLICIT

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).ravel()
        if pts.size == 0:
            raise ValueError("node set is empty")
        if pts[0] <= 0.0 or pts[-1] >= 1.0 or np.any(np.diff(pts) <= 0.0):
            raise ValueError("nodes must be strictly increasing and strictly inside (0, 1)")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "kind", NodeKind(self.kind))

    def __len__(self):
        return self.points.size

    @property
    def h(self):
        return fill_distance(self)


def uniform_nodes(n):
    """x_j = j / (n + 1), j = 1..n; the endpoints are excluded."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one node")
    return NodeSet(np.arange(1, n + 1) / (n + 1.0), NodeKind.UNIFORM)


def chebyshev_nodes(n):
    """First-kind Chebyshev roots mapped to (0, 1), ascending."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one node")
    j = np.arange(1, n + 1)
    return NodeSet(0.5 * (1.0 - np.cos((2 * j - 1) * np.pi / (2 * n))), NodeKind.CHEBYSHEV)


def explicit_nodes(points):
    return NodeSet(np.sort(np.asarray(points, dtype=float)), NodeKind.EXPLICIT)


def make_nodes(kind, n):
    kind = NodeKind(kind)
    if kind is NodeKind.UNIFORM:
        return uniform_nodes(n)
    if kind is NodeKind.CHEBYSHEV:
        return chebyshev_nodes(n)
    raise ValueError("explicit node sets are built with explicit_nodes()")


def fill_distance(nodes):
    """sup over x in [0, 1] of the distance to the nearest node."""
    p = nodes.points if isinstance(nodes, NodeSet) else np.sort(np.asarray(nodes, dtype=float))
    h = max(p[0], 1.0 - p[-1])
    if p.size > 1:
        h = max(h, 0.5 * np.diff(p).max())
    return float(h)


@dataclass(frozen=True, eq=False)
class Interpolant:
    spec: KernelSpec
    nodes: NodeSet
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size != len(self.nodes):
            raise ValueError("coefficient count does not match node count")
        if not np.all(np.isfinite(c)):
            raise ValueError("interpolant coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, x):
        return eval_interpolant(self, x)

    def to_csv(self):
        buf = io.StringIO()
        buf.write("node,coefficient\n")
        for xj, cj in zip(self.nodes.points, self.coeffs):
            buf.write(f"{xj:.17g},{cj:.17g}\n")
        return buf.getvalue()


def fit_interpolant(spec, nodes, values):
    """Solve K c = y with K[i, j] = K(x_i, x_j)."""
    y = np.asarray(values, dtype=float).ravel()
    if y.size != len(nodes):
        raise ValueError(f"got {y.size} values for {len(nodes)} nodes")
    K = kernel_matrix(spec, nodes.points, nodes.points)
    return Interpolant(spec, nodes, lu_solve(K, y))


def eval_interpolant(s, x):
    x = np.asarray(x, dtype=float)
    vals = kernel_matrix(s.spec, x.ravel(), s.nodes.points) @ s.coeffs
    return vals.reshape(x.shape)[()] if x.ndim == 0 else vals.reshape(x.shape)
