"""Composite Gauss-Legendre panels on the real line.

Panels are always aligned with the origin (the Green's function changes
its case structure there) and with any extra breakpoints supplied by the
caller, typically the jump points of a piecewise-constant potential.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre

DEFAULT_ORDER = 10


@lru_cache(maxsize=None)
def _reference_rule(order):
    t, w = legendre.leggauss(order)
    return t, w


@lru_cache(maxsize=None)
def _reference_cumulative(order):
    """Matrix S with S[i, j] = int_{-1}^{t_i} l_j(t) dt on the reference panel."""
    t, _ = _reference_rule(order)
    vander = legendre.legvander(t, order - 1)
    coeffs = np.linalg.inv(vander)  # column j: Legendre coefficients of l_j
    integ = legendre.legint(coeffs, lbnd=-1.0, axis=0)
    return legendre.legval(t, integ).T.copy()


@dataclass(frozen=True)
class QuadratureScheme:
    """Nodes and weights of a composite Gauss rule.

    ``panel`` maps every node to its panel index and ``edges`` holds the
    panel endpoints, so ``edges[panel[i]] < nodes[i] < edges[panel[i] + 1]``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    edges: np.ndarray
    panel: np.ndarray
    order: int = DEFAULT_ORDER
    split_at_zero: bool = True

    def __len__(self):
        return self.nodes.size

    @property
    def n_panels(self):
        return self.edges.size - 1

    @property
    def length(self):
        return float(self.edges[-1] - self.edges[0])

    def cumulative_weights(self):
        """Per-node weights of the partial integral from the panel start.

        Row ``i`` integrates a smooth function from ``edges[panel[i]]`` up to
        ``nodes[i]`` using only the nodes of that panel.  Returned as an array
        of shape ``(n_nodes, order)`` indexed by the local node number.
        """
        s_ref = _reference_cumulative(self.order)
        h = np.diff(self.edges)[self.panel]
        local = np.arange(self.nodes.size) % self.order
        return 0.5 * h[:, None] * s_ref[local]

    def refined(self):
        """The same breakpoints with every panel bisected."""
        mids = 0.5 * (self.edges[:-1] + self.edges[1:])
        edges = np.sort(np.concatenate([self.edges, mids]))
        return scheme_from_edges(edges, self.order)


def scheme_from_edges(edges, order=DEFAULT_ORDER):
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("need at least two panel edges")
    if np.any(np.diff(edges) <= 0):
        raise ValueError("panel edges must be strictly ascending")
    inner = edges[1:-1]
    if edges[0] < 0 < edges[-1] and not np.any(inner == 0.0):
        raise ValueError("a panel straddles the origin")
    t, w = _reference_rule(order)
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b))[:, None] + half[:, None] * t[None, :]
    weights = half[:, None] * w[None, :]
    panel = np.repeat(np.arange(edges.size - 1), order)
    return QuadratureScheme(nodes.ravel(), weights.ravel(), edges, panel, order)


def gauss_panels(breakpoints, panels_per_unit=4.0, order=DEFAULT_ORDER, min_panels=1):
    """Composite rule over ``[min(breakpoints), max(breakpoints)]``.

    The origin is inserted as an edge whenever it lies strictly inside the
    interval.  Each gap between consecutive breakpoints is cut into
    ``max(min_panels, ceil(gap * panels_per_unit))`` equal panels.
    """
    pts = np.unique(np.asarray(breakpoints, dtype=float))
    if pts.size < 2:
        raise ValueError("the covered interval is empty")
    if pts[0] < 0.0 < pts[-1]:
        pts = np.unique(np.append(pts, 0.0))
    edges = [pts[:1]]
    for lo, hi in zip(pts[:-1], pts[1:]):
        m = max(min_panels, int(np.ceil((hi - lo) * panels_per_unit)))
        edges.append(np.linspace(lo, hi, m + 1)[1:])
    return scheme_from_edges(np.concatenate(edges), order)
