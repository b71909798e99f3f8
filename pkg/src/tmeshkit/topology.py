"""T-junction detection and classification, plus combinatorial search helpers.

A T-junction is a (d-2)-dimensional interior entity of valence 3: it
bounds three hyperfaces instead of four.  It carries an orthogonal
direction (the singleton component strictly inside its associated cell),
a pointing direction (the singleton component on the cell boundary), and
the unique associated cell itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .mesh import (Entity, MeshError, TMesh, entity_hull, point_in_skeleton,
                   singleton_dirs)
from .regions import Scalar


class ClassificationAmbiguous(MeshError):
    """The complex is corrupted: a hanging entity cannot be classified."""


class PreconditionViolated(MeshError):
    """Arguments do not satisfy the operation's stated preconditions."""


class NotFound(MeshError):
    """No separating T-junction exists; on valid inputs this is a theorem
    violation and indicates a bug."""


@dataclass(frozen=True)
class TJunction:
    entity: Entity
    odir: int
    pdir: int
    ascell: Entity
    valence: int


def _hyperface_index(mesh: TMesh) -> dict:
    """Hyperfaces keyed by (orthogonal direction, singleton value)."""
    def build():
        index: dict = {}
        for f in mesh.entities[mesh.dim - 1]:
            (s,) = singleton_dirs(f)
            index.setdefault((s, f[s][0]), []).append(f)
        return index
    return mesh.memo("hyperface_index", build)


def _valence(mesh: TMesh, t: Entity) -> int:
    i, j = singleton_dirs(t)
    index = _hyperface_index(mesh)
    hull = entity_hull(t)
    count = 0
    for key in ((i, t[i][0]), (j, t[j][0])):
        for f in index.get(key, ()):
            if all(a <= lo and hi <= b for (a, b), (lo, hi) in zip(f, hull)):
                count += 1
    return count


def find_tjunctions(mesh: TMesh) -> tuple:
    """All T-junctions of the mesh, classified, sorted by entity."""
    def build():
        d = mesh.dim
        if d < 2:
            return ()
        out = []
        for t in sorted(mesh.entities[d - 2]):
            sdirs = singleton_dirs(t)
            if len(sdirs) != 2:
                continue
            if any(t[k][0] in (0, mesh.domain.extents[k]) for k in sdirs):
                continue  # in the domain boundary
            valence = _valence(mesh, t)
            if valence >= 4:
                continue
            if valence < 3:
                raise ClassificationAmbiguous(
                    f"entity {t!r} has valence {valence}; complex is corrupted")
            out.append(_classify(mesh, t, valence))
        return tuple(out)
    return mesh.memo("tjunctions", build)


def _classify(mesh: TMesh, t: Entity, valence: int) -> TJunction:
    """Associated cell: the unique cell whose boundary holds t with one
    singleton direction strictly interior (the orthogonal direction) and
    the other on the cell boundary (the pointing direction); such a cell
    contains t in a face interior, away from all its vertices."""
    i0, j0 = singleton_dirs(t)
    hull = entity_hull(t)
    candidates = []
    for q in mesh.cells:
        if not all(qa <= a and b <= qb for (a, b), (qa, qb) in zip(hull, q)):
            continue
        interior = [k for k in (i0, j0) if q[k][0] < t[k][0] < q[k][1]]
        boundary = [k for k in (i0, j0) if t[k][0] in (q[k][0], q[k][1])]
        if len(interior) == 1 and len(boundary) == 1:
            candidates.append((q, interior[0], boundary[0]))
    if len(candidates) != 1:
        raise ClassificationAmbiguous(
            f"entity {t!r} has {len(candidates)} associated cells")
    q, odir, pdir = candidates[0]
    return TJunction(entity=t, odir=odir, pdir=pdir, ascell=q, valence=valence)


def tjunctions_by_odir(mesh: TMesh, i: int) -> tuple:
    return tuple(t for t in find_tjunctions(mesh) if t.odir == i)


# ---------------------------------------------------------------------------
# separating T-junction search

@dataclass(frozen=True)
class SeparationWitness:
    """Where the found T-junction's closure meets the probe segment."""
    t_enter: Fraction
    t_exit: Fraction
    point: tuple


def _segment_box_window(x: Sequence, y: Sequence, hull) -> tuple | None:
    """Parameter window [t0, t1] of {x + t (y - x)} inside a closed box."""
    lo_t, hi_t = Fraction(0), Fraction(1)
    for (a, b), xc, yc in zip(hull, x, y):
        dx = yc - xc
        if dx == 0:
            if not a <= xc <= b:
                return None
            continue
        t_a = Fraction(a - xc, dx)
        t_b = Fraction(b - xc, dx)
        t_lo, t_hi = min(t_a, t_b), max(t_a, t_b)
        lo_t, hi_t = max(lo_t, t_lo), min(hi_t, t_hi)
        if lo_t > hi_t:
            return None
    return lo_t, hi_t


def find_separating_tjunction(mesh: TMesh, x: Sequence[Scalar], y: Sequence[Scalar],
                              i: int) -> tuple[TJunction, SeparationWitness]:
    """Between aligned points x in the i-skeleton and y outside it, find an
    i-orthogonal T-junction whose closure meets the segment, whose pointing
    coordinate separates x from y, and whose cell reaches between them.

    Among all valid junctions the one met earliest along the segment from
    x is returned (ties broken by entity order) so output is deterministic.
    """
    x = tuple(Fraction(v) for v in x)
    y = tuple(Fraction(v) for v in y)
    if len(x) != mesh.dim or len(y) != mesh.dim:
        raise PreconditionViolated("points of wrong dimension")
    if x == y or x[i] != y[i]:
        raise PreconditionViolated("points must differ but agree in direction i")
    if not point_in_skeleton(mesh, i, x):
        raise PreconditionViolated("x must lie in the i-orthogonal skeleton")
    if point_in_skeleton(mesh, i, y):
        raise PreconditionViolated("y must lie outside the i-orthogonal skeleton")

    best = None
    for tj in tjunctions_by_odir(mesh, i):
        if Fraction(tj.entity[i][0]) != x[i]:
            continue
        j = tj.pdir
        if x[j] == y[j]:
            continue
        window = _segment_box_window(x, y, entity_hull(tj.entity))
        if window is None:
            continue
        qa, qb = tj.ascell[j]
        lo, hi = min(x[j], y[j]), max(x[j], y[j])
        if not (qa < hi and lo < qb):  # open cell interval vs closed hull
            continue
        key = (window[0], tj.entity)
        if best is None or key < best[0]:
            point = tuple(xc + window[0] * (yc - xc) for xc, yc in zip(x, y))
            best = (key, tj, SeparationWitness(window[0], window[1], point))
    if best is None:
        raise NotFound(
            "no separating T-junction: theorem violation or invalid mesh")
    return best[1], best[2]


# ---------------------------------------------------------------------------
# minimal connecting box

def min_connecting_box(e1: Entity, e2: Entity) -> tuple:
    """Componentwise minimal box touching both entities.

    Per direction: the component intersection when nonempty, otherwise the
    closed gap interval between the two components.  Components come back
    tagged ("open" | "closed" | "point", lo, hi) because the three cases
    produce sets of different kinds.
    """
    out = []
    for (a1, b1), (a2, b2) in zip(e1, e2):
        inter_lo, inter_hi = max(a1, a2), min(b1, b2)
        nonempty = (inter_lo < inter_hi or
                    (inter_lo == inter_hi and (a1 == b1 or a2 == b2)
                     and a1 <= inter_lo <= b1 and a2 <= inter_lo <= b2))
        if nonempty:
            if inter_lo == inter_hi:
                out.append(("point", inter_lo, inter_hi))
            else:
                out.append(("open", inter_lo, inter_hi))
        elif b1 <= a2:
            out.append(("point", b1, b1) if b1 == a2 else ("closed", b1, a2))
        else:
            out.append(("point", b2, b2) if b2 == a1 else ("closed", b2, a1))
    return tuple(out)
