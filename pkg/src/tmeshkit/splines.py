"""Univariate Cox-de Boor evaluation and multivariate spline evaluation.

Index arithmetic stays exact; parametric evaluation is floating point.
Evaluation is right-continuous at knot values except at the global right
end of the parametric domain, where it is left-continuous, so that sums
of basis functions cover the closed domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .anchors import index_support, local_knot_vector
from .mesh import Entity, TMesh
from .regions import Box


class DegenerateKnots(ValueError):
    """First and last knot coincide; the spline is undefined."""


def bspline_eval(knots: Sequence[float], degree: int, t: float,
                 left_continuous: bool = False) -> float:
    """Value at t of the single B-spline with the given p+2 knots.

    Knots must be non-decreasing with first < last; the value is zero
    outside [first, last].
    """
    p = int(degree)
    k = [float(v) for v in knots]
    if len(k) != p + 2:
        raise ValueError(f"degree {p} needs {p + 2} knots, got {len(k)}")
    if any(k[i] > k[i + 1] for i in range(len(k) - 1)):
        raise ValueError("knots must be non-decreasing")
    if k[0] == k[-1]:
        raise DegenerateKnots(f"all knots equal: {k}")
    t = float(t)
    if left_continuous:
        vals = [1.0 if k[i] < t <= k[i + 1] else 0.0 for i in range(p + 1)]
    else:
        vals = [1.0 if k[i] <= t < k[i + 1] else 0.0 for i in range(p + 1)]
    for r in range(1, p + 1):
        nxt = []
        for i in range(p + 1 - r):
            acc = 0.0
            if k[i + r] != k[i]:
                acc += (t - k[i]) / (k[i + r] - k[i]) * vals[i]
            if k[i + r + 1] != k[i + 1]:
                acc += (k[i + r + 1] - t) / (k[i + r + 1] - k[i + 1]) * vals[i + 1]
            nxt.append(acc)
        vals = nxt
    return vals[0]


def bspline_eval_array(knots: Sequence[float], degree: int, ts: np.ndarray,
                       domain_right: float | None = None) -> np.ndarray:
    """Vectorized evaluation; points equal to `domain_right` are evaluated
    with the left-continuous convention."""
    p = int(degree)
    k = np.asarray([float(v) for v in knots])
    ts = np.asarray(ts, dtype=float)
    vals = []
    for i in range(p + 1):
        ind = (k[i] <= ts) & (ts < k[i + 1])
        if domain_right is not None:
            ind |= (ts == domain_right) & (k[i] < ts) & (ts <= k[i + 1])
        vals.append(ind.astype(float))
    for r in range(1, p + 1):
        nxt = []
        for i in range(p + 1 - r):
            acc = np.zeros_like(ts)
            if k[i + r] != k[i]:
                acc += (ts - k[i]) / (k[i + r] - k[i]) * vals[i]
            if k[i + r + 1] != k[i + 1]:
                acc += (k[i + r + 1] - ts) / (k[i + r + 1] - k[i + 1]) * vals[i + 1]
            nxt.append(acc)
        vals = nxt
    return vals[0]


@dataclass(frozen=True)
class TSpline:
    """An anchor with its local knot vectors and index support box."""
    anchor: Entity
    local_vectors: tuple
    support: Box


def tspline(mesh: TMesh, anchor: Entity) -> TSpline:
    vectors = tuple(local_knot_vector(mesh, anchor, j) for j in range(mesh.dim))
    return TSpline(anchor=anchor, local_vectors=vectors,
                   support=index_support(mesh, anchor))


def tspline_eval(mesh: TMesh, anchor: Entity, point: Sequence[float]) -> float:
    """Product of univariate values after mapping index vectors through the
    parametric knots."""
    value = 1.0
    for j in range(mesh.dim):
        knots_j = mesh.domain.parametric_knots[j]
        window = [float(knots_j[n]) for n in local_knot_vector(mesh, anchor, j)]
        t = float(point[j])
        right = float(knots_j[-1])
        value *= bspline_eval(window, mesh.domain.degrees[j], t,
                              left_continuous=(t == right))
        if value == 0.0:
            return 0.0
    return value


def supports_overlap(mesh: TMesh, a1: Entity, a2: Entity) -> bool:
    """Do the closed index supports intersect?"""
    s1, s2 = index_support(mesh, a1), index_support(mesh, a2)
    return all(max(l1, l2) <= min(h1, h2) for (l1, h1), (l2, h2) in zip(s1, s2))


def parametric_support(mesh: TMesh, anchor: Entity) -> tuple:
    """Closed parametric box spanned by the mapped local knot vectors."""
    spans = []
    for j, (lo, hi) in enumerate(index_support(mesh, anchor)):
        knots_j = mesh.domain.parametric_knots[j]
        spans.append((float(knots_j[lo]), float(knots_j[hi])))
    return tuple(spans)
