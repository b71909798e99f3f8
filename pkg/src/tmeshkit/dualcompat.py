"""Knot-vector overlap relations and the dual-compatibility classifiers.

Two strictly increasing knot vectors overlap when both embed as
consecutive runs of one common vector; for strictly increasing vectors
this is equivalent to agreeing, as sets, on the intersection of their
convex hulls (the equivalence is property-tested against a brute-force
oracle in tmeshkit.verify).  Two splines weakly partially overlap when
their vectors differ and overlap in some direction, and strongly
partially overlap when their supports are disjoint or their vectors
overlap in at least d-1 directions.
"""

from __future__ import annotations

import numpy as np

from .anchors import anchor_set, index_support, local_knot_vector
from .mesh import Entity, TMesh


class SameAnchor(ValueError):
    """Partial-overlap relations are defined for distinct anchors only."""


def knots_overlap(v1, v2) -> bool:
    """Overlap test for strictly increasing integer vectors: the vectors
    agree as sets on the intersection of their convex hulls."""
    lo = max(v1[0], v2[0])
    hi = min(v1[-1], v2[-1])
    if lo > hi:
        return True
    w1 = {x for x in v1 if lo <= x <= hi}
    w2 = {x for x in v2 if lo <= x <= hi}
    return w1 == w2


def _vectors(mesh: TMesh, a: Entity) -> tuple:
    return tuple(local_knot_vector(mesh, a, j) for j in range(mesh.dim))


def weakly_partially_overlap(mesh: TMesh, a1: Entity, a2: Entity) -> bool:
    """Some direction where the local vectors differ and overlap."""
    if a1 == a2:
        raise SameAnchor("anchors must be distinct")
    v1, v2 = _vectors(mesh, a1), _vectors(mesh, a2)
    return any(w1 != w2 and knots_overlap(w1, w2) for w1, w2 in zip(v1, v2))


def strongly_partially_overlap(mesh: TMesh, a1: Entity, a2: Entity) -> bool:
    """Disjoint supports, or overlap in at least d-1 directions."""
    if a1 == a2:
        raise SameAnchor("anchors must be distinct")
    s1, s2 = index_support(mesh, a1), index_support(mesh, a2)
    if any(max(l1, l2) > min(h1, h2) for (l1, h1), (l2, h2) in zip(s1, s2)):
        return True
    v1, v2 = _vectors(mesh, a1), _vectors(mesh, a2)
    misses = sum(1 for w1, w2 in zip(v1, v2) if not knots_overlap(w1, w2))
    return misses <= 1


def _candidate_pairs(mesh: TMesh, anchors) -> list:
    """Index pairs with intersecting supports; all other pairs satisfy both
    relations outright (a disjoint direction differs and overlaps)."""
    n = len(anchors)
    if n < 2:
        return []
    los = np.empty((n, mesh.dim), dtype=np.int64)
    his = np.empty((n, mesh.dim), dtype=np.int64)
    for idx, a in enumerate(anchors):
        supp = index_support(mesh, a)
        los[idx] = [s[0] for s in supp]
        his[idx] = [s[1] for s in supp]
    overlap = np.ones((n, n), dtype=bool)
    for k in range(mesh.dim):
        lo, hi = los[:, k], his[:, k]
        overlap &= np.maximum.outer(lo, lo) <= np.minimum.outer(hi, hi)
    iu, ju = np.triu_indices(n, k=1)
    keep = overlap[iu, ju]
    return list(zip(iu[keep].tolist(), ju[keep].tolist()))


def _dc_scan(mesh: TMesh, weak: bool) -> tuple[bool, tuple]:
    anchors = anchor_set(mesh)
    d = mesh.dim
    vectors = [_vectors(mesh, a) for a in anchors]
    witnesses = []
    for ia, ib in _candidate_pairs(mesh, anchors):
        v1, v2 = vectors[ia], vectors[ib]
        flags = [knots_overlap(w1, w2) for w1, w2 in zip(v1, v2)]
        if weak:
            ok = any(f and w1 != w2 for f, w1, w2 in zip(flags, v1, v2))
        else:
            ok = sum(1 for f in flags if not f) <= 1
        if not ok:
            witnesses.append((anchors[ia], anchors[ib],
                              tuple(zip(v1, v2, flags))))
    return (not witnesses, tuple(witnesses))


def is_wdc(mesh: TMesh) -> tuple[bool, tuple]:
    """Weak dual-compatibility: every anchor pair weakly partially overlaps.
    Witnesses carry the per-direction vectors and overlap verdicts."""
    return mesh.memo("wdc", lambda: _dc_scan(mesh, weak=True))


def is_sdc(mesh: TMesh) -> tuple[bool, tuple]:
    """Strong dual-compatibility: every anchor pair strongly partially
    overlaps."""
    return mesh.memo("sdc", lambda: _dc_scan(mesh, weak=False))
