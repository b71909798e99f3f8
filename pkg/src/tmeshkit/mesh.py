"""T-mesh core: integer index domain, explicit entity complex, bisection refinement.

A mesh lives on the open index box prod_k (0, N_k).  Entities of every
dimension 0..d are stored explicitly as tuples of components, where a
component is an integer pair (a, b): a == b encodes the singleton {a},
a < b the open interval (a, b).  The entity sets of a valid mesh are
pairwise disjoint as point sets and their union is the closed domain.

Meshes are immutable; refinement returns a new mesh and records a replay
log.  Derived structures (skeleton rasters, T-junction tables, knot
vectors) are memoized per instance; the memo is build-once and safe for
concurrent readers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .regions import Box, BoxRegion, Scalar

Component = tuple  # (a, b) ints: a == b singleton, a < b open interval
Entity = tuple     # tuple of d Components


class MeshError(Exception):
    """Base class for mesh construction and refinement errors."""


class NotACell(MeshError):
    """The entity passed to subdiv is not a d-cell of the mesh."""


class CellOutsideActiveRegion(MeshError):
    """Refinement target is not contained in the active region."""


class NonIntegerMidpoint(MeshError):
    """Bisection midpoint is not an integer; the configuration is disallowed."""


class DimensionTooSmall(MeshError):
    """Operation requires a higher-dimensional mesh."""


# ---------------------------------------------------------------------------
# entity helpers

def is_singleton(comp: Component) -> bool:
    return comp[0] == comp[1]


def entity_dim(entity: Entity) -> int:
    return sum(1 for c in entity if c[0] < c[1])


def singleton_dirs(entity: Entity) -> tuple[int, ...]:
    return tuple(k for k, c in enumerate(entity) if c[0] == c[1])


def entity_hull(entity: Entity) -> Box:
    """Closure of the entity as a closed box."""
    return tuple((a, b) for a, b in entity)


def hull_inside(entity: Entity, box: Sequence[Sequence[int]]) -> bool:
    return all(lo <= a and b <= hi for (a, b), (lo, hi) in zip(entity, box))


def entity_contains_point(entity: Entity, point: Sequence[Scalar]) -> bool:
    """Exact membership with open-interval semantics."""
    for (a, b), x in zip(entity, point):
        if a == b:
            if x != a:
                return False
        elif not a < x < b:
            return False
    return True


def project_entity(entity: Entity, j: int, n: int) -> Entity:
    """Replace the j-th component by the singleton {n}."""
    return entity[:j] + ((n, n),) + entity[j + 1:]


# ---------------------------------------------------------------------------
# domain and mesh

@dataclass(frozen=True)
class IndexDomain:
    """Box-shaped index domain with degrees and parametric knots.

    parametric_knots[k] maps index i to the knot value xi_i in direction
    k; it defaults to the identity and must be strictly increasing.
    """

    extents: tuple
    degrees: tuple
    parametric_knots: tuple = None

    def __post_init__(self):
        extents = tuple(int(n) for n in self.extents)
        degrees = tuple(int(p) for p in self.degrees)
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "degrees", degrees)
        if len(extents) != len(degrees):
            raise ValueError("extents and degrees must have equal length")
        if any(n <= 0 for n in extents):
            raise ValueError("extents must be positive")
        if any(p < 0 for p in degrees):
            raise ValueError("degrees must be non-negative")
        for n, p in zip(extents, degrees):
            if n < 2 * ((p + 1) // 2) + 1:
                raise ValueError(
                    f"extent {n} too small for degree {p}: active region empty")
        if self.parametric_knots is None:
            knots = tuple(tuple(Fraction(i) for i in range(n + 1)) for n in extents)
        else:
            knots = tuple(tuple(Fraction(x) for x in seq) for seq in self.parametric_knots)
            for n, seq in zip(extents, knots):
                if len(seq) != n + 1:
                    raise ValueError("parametric_knots[k] must have N_k + 1 entries")
                if any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)):
                    raise ValueError("parametric knots must be strictly increasing")
        object.__setattr__(self, "parametric_knots", knots)

    @property
    def dim(self) -> int:
        return len(self.extents)

    def frame_width(self, k: int) -> int:
        return (self.degrees[k] + 1) // 2

    def active_spans(self) -> tuple:
        return tuple((self.frame_width(k), n - self.frame_width(k))
                     for k, n in enumerate(self.extents))


@dataclass(frozen=True, eq=False)
class TMesh:
    """Immutable entity complex plus the refinement log that rebuilds it."""

    domain: IndexDomain
    breakpoints: tuple                 # initial tensor breakpoints per direction
    entities: tuple                    # entities[j] = frozenset of j-dim entities
    refinement_log: tuple = ()         # ((cell, direction), ...)
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.domain.dim

    @property
    def cells(self) -> frozenset:
        return self.entities[self.dim]

    def memo(self, key, build):
        """Build-once memo; idempotent builds make races harmless."""
        try:
            return self._memo[key]
        except KeyError:
            value = build()
            self._memo[key] = value
            return value


def create_tensor_mesh(domain: IndexDomain, breakpoints: Sequence[Sequence[int]] | None = None) -> TMesh:
    """Initial tensor-product mesh from per-direction breakpoint sequences.

    Breakpoints default to every integer 0..N_k.  Each direction needs at
    least two breakpoints, starting at 0 and ending at N_k.
    """
    if breakpoints is None:
        breakpoints = [range(n + 1) for n in domain.extents]
    bps = []
    for k, seq in enumerate(breakpoints):
        seq = tuple(int(x) for x in seq)
        n = domain.extents[k]
        if len(seq) < 2:
            raise MeshError(f"direction {k}: need at least 2 breakpoints")
        if any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)):
            raise MeshError(f"direction {k}: breakpoints must be strictly increasing")
        if seq[0] != 0 or seq[-1] != n:
            raise MeshError(f"direction {k}: breakpoints must run from 0 to {n}")
        bps.append(seq)
    per_dir = []
    for seq in bps:
        comps = [(v, v) for v in seq]
        comps += [(seq[i], seq[i + 1]) for i in range(len(seq) - 1)]
        per_dir.append(comps)
    by_dim = [set() for _ in range(domain.dim + 1)]
    for combo in itertools.product(*per_dir):
        by_dim[entity_dim(combo)].add(combo)
    return TMesh(domain=domain,
                 breakpoints=tuple(bps),
                 entities=tuple(frozenset(s) for s in by_dim))


def subdiv(mesh: TMesh, cell: Entity, j: int) -> TMesh:
    """Symmetric bisection of a cell in direction j.

    The refinement box D extends through the frame to the domain boundary
    in every other direction where the cell touches the active-region
    boundary; every entity inside D sharing the cell's j-component is
    replaced by its three children.
    """
    dom = mesh.domain
    d = dom.dim
    if not 0 <= j < d:
        raise ValueError(f"direction {j} out of range")
    if cell not in mesh.entities[d]:
        raise NotACell(f"{cell!r} is not a cell of this mesh")
    for k, (a, b) in enumerate(cell):
        f = dom.frame_width(k)
        if a < f or b > dom.extents[k] - f:
            raise CellOutsideActiveRegion(
                f"cell {cell!r} leaves the active region in direction {k}")
    a, b = cell[j]
    if (a + b) % 2:
        raise NonIntegerMidpoint(f"cell {cell!r} has odd width in direction {j}")
    m = (a + b) // 2

    box = [[lo, hi] for lo, hi in cell]
    for k in range(d):
        if k == j:
            continue
        f = dom.frame_width(k)
        if box[k][0] == f:
            box[k][0] = 0
        if box[k][1] == dom.extents[k] - f:
            box[k][1] = dom.extents[k]

    qj = cell[j]
    new_sets = [set(s) for s in mesh.entities]
    for dim_idx in range(d + 1):
        replaced = [e for e in mesh.entities[dim_idx]
                    if e[j] == qj and hull_inside(e, box)]
        for e in replaced:
            new_sets[dim_idx].discard(e)
            new_sets[dim_idx].add(e[:j] + ((e[j][0], m),) + e[j + 1:])
            new_sets[dim_idx].add(e[:j] + ((m, e[j][1]),) + e[j + 1:])
            new_sets[dim_idx - 1].add(e[:j] + ((m, m),) + e[j + 1:])
    return TMesh(domain=dom,
                 breakpoints=mesh.breakpoints,
                 entities=tuple(frozenset(s) for s in new_sets),
                 refinement_log=mesh.refinement_log + ((cell, j),))


def find_cell_containing(mesh: TMesh, point: Sequence[Scalar]) -> Entity:
    """The unique cell whose open box contains the (strictly interior) point."""
    for cell in mesh.cells:
        if all(a < x < b for (a, b), x in zip(cell, point)):
            return cell
    raise MeshError(f"no cell strictly contains {point!r}")


# ---------------------------------------------------------------------------
# regions, skeletons, admissibility

def active_region(mesh: TMesh) -> BoxRegion:
    return BoxRegion.from_box(mesh.domain.active_spans())


def frame_region(mesh: TMesh) -> BoxRegion:
    """Closure of the domain minus the active region (union of 2d slabs)."""
    dom = mesh.domain
    boxes = []
    for k, n in enumerate(dom.extents):
        f = dom.frame_width(k)
        if f == 0:
            continue
        full = [(0, m) for m in dom.extents]
        boxes.append(tuple(full[:k]) + ((0, f),) + tuple(full[k + 1:]))
        boxes.append(tuple(full[:k]) + ((n - f, n),) + tuple(full[k + 1:]))
    return BoxRegion(dom.dim, boxes)


def frame_region_k(mesh: TMesh, k: int) -> BoxRegion:
    dom = mesh.domain
    n = dom.extents[k]
    f = dom.frame_width(k)
    full = [(0, m) for m in dom.extents]
    boxes = [tuple(full[:k]) + ((0, f),) + tuple(full[k + 1:]),
             tuple(full[:k]) + ((n - f, n),) + tuple(full[k + 1:])]
    return BoxRegion(dom.dim, boxes)


def slice_region(mesh: TMesh, k: int, n: int) -> BoxRegion:
    """The full slice { x : x_k = n } as a region."""
    full = [(0, m) for m in mesh.domain.extents]
    return BoxRegion.from_box(tuple(full[:k]) + ((n, n),) + tuple(full[k + 1:]))


def skeleton(mesh: TMesh, j: int) -> BoxRegion:
    """Union of the closures of all j-orthogonal hyperfaces."""
    d = mesh.dim
    boxes = [entity_hull(e) for e in mesh.entities[d - 1]
             if singleton_dirs(e) == (j,)]
    return BoxRegion(d, boxes)


def skeleton_mask(mesh: TMesh, j: int) -> np.ndarray:
    """Boolean raster of the j-orthogonal skeleton on the half-integer lattice.

    Lattice point g (integer vector, g_k in 0..2 N_k) stands for the
    point g/2.  Because every entity has integer bounds, containment of a
    closed integer box in the skeleton is equivalent to all its lattice
    points being set, which makes the raster an exact query structure.
    """
    def build():
        d = mesh.dim
        shape = tuple(2 * n + 1 for n in mesh.domain.extents)
        grid = np.zeros(shape, dtype=bool)
        for e in mesh.entities[d - 1]:
            if singleton_dirs(e) != (j,):
                continue
            sel = tuple(slice(2 * a, 2 * b + 1) for a, b in e)
            grid[sel] = True
        grid.setflags(write=False)
        return grid
    return mesh.memo(("skeleton_mask", j), build)


def hull_in_skeleton(mesh: TMesh, j: int, hull: Sequence[Sequence[int]]) -> bool:
    """Exact test: closed integer box inside the j-orthogonal skeleton."""
    mask = skeleton_mask(mesh, j)
    sel = tuple(slice(2 * a, 2 * b + 1) for a, b in hull)
    return bool(mask[sel].all())


def open_entity_meets_skeleton(mesh: TMesh, j: int, entity: Entity) -> bool:
    """Exact test: does the open entity intersect the j-orthogonal skeleton?"""
    mask = skeleton_mask(mesh, j)
    sel = []
    for a, b in entity:
        if a == b:
            sel.append(slice(2 * a, 2 * a + 1))
        else:
            sel.append(slice(2 * a + 1, 2 * b))
    return bool(mask[tuple(sel)].any())


def point_in_skeleton(mesh: TMesh, j: int, point: Sequence[Scalar]) -> bool:
    """Exact membership for an arbitrary rational point."""
    d = mesh.dim
    for e in mesh.entities[d - 1]:
        if singleton_dirs(e) != (j,):
            continue
        if all(a <= x <= b for (a, b), x in zip(e, point)):
            return True
    return False


def orth_entities(mesh: TMesh, kappa: Iterable[int]) -> frozenset:
    """All entities whose singleton directions are exactly `kappa`."""
    kset = tuple(sorted(set(kappa)))
    if any(k < 0 or k >= mesh.dim for k in kset):
        raise ValueError(f"directions {kset} out of range")
    dim_idx = mesh.dim - len(kset)
    return frozenset(e for e in mesh.entities[dim_idx]
                     if singleton_dirs(e) == kset)


def is_admissible(mesh: TMesh) -> tuple[bool, tuple]:
    """Check frame slices and frame T-junctions; returns (ok, violations).

    Violations are ("slice_not_in_skeleton", k, n) or
    ("tjunction_in_frame", k, entity).
    """
    def build():
        from .topology import find_tjunctions

        dom = mesh.domain
        violations = []
        for k, n_k in enumerate(dom.extents):
            f = dom.frame_width(k)
            mask = skeleton_mask(mesh, k)
            for n in [*range(0, f + 1), *range(n_k - f, n_k + 1)]:
                sel = tuple(slice(None) if kk != k else slice(2 * n, 2 * n + 1)
                            for kk in range(dom.dim))
                if not mask[sel].all():
                    violations.append(("slice_not_in_skeleton", k, n))
        if mesh.dim >= 2:
            for tj in find_tjunctions(mesh):
                for k in (tj.odir, tj.pdir):
                    f = dom.frame_width(k)
                    t = tj.entity[k][0]
                    if t <= f or t >= dom.extents[k] - f:
                        violations.append(("tjunction_in_frame", k, tj.entity))
        return (not violations, tuple(violations))
    return mesh.memo("admissible", build)


def check_three_direction_assumption(mesh: TMesh) -> bool:
    """Every active cell has active neighbor cells in at least 3 directions."""
    if mesh.dim < 3:
        raise DimensionTooSmall("needs at least 3 directions")
    active = mesh.domain.active_spans()
    active_cells = [c for c in mesh.cells if hull_inside(c, active)]
    for q in active_cells:
        found = 0
        for i in range(mesh.dim):
            if _has_neighbor(q, i, active_cells):
                found += 1
        if found < 3:
            return False
    return True


def _has_neighbor(q: Entity, i: int, pool: Sequence[Entity]) -> bool:
    for other in pool:
        if other is q or other == q:
            continue
        if other[i][1] != q[i][0] and other[i][0] != q[i][1]:
            continue
        if all(k == i or (max(other[k][0], q[k][0]) < min(other[k][1], q[k][1]))
               for k in range(len(q))):
            return True
    return False


# ---------------------------------------------------------------------------
# convenience constructors

def build_framed_mesh(degrees: Sequence[int],
                      active_breakpoints: Sequence[Sequence[int]],
                      parametric_knots: Sequence[Sequence] | None = None) -> TMesh:
    """Admissible tensor mesh: unit frame bands around a given active grid.

    `active_breakpoints[k]` are breakpoints of the active region relative
    to its own origin (starting at 0); the domain adds a fully sliced
    frame of width (p_k+1)//2 on both sides.
    """
    degrees = tuple(int(p) for p in degrees)
    extents = []
    bps = []
    for k, seq in enumerate(active_breakpoints):
        seq = sorted(int(x) for x in seq)
        f = (degrees[k] + 1) // 2
        n = seq[-1] + 2 * f
        extents.append(n)
        shifted = [x + f for x in seq]
        bps.append(sorted(set(range(0, f + 1)) | set(shifted) | set(range(n - f, n + 1))))
    domain = IndexDomain(extents=tuple(extents), degrees=degrees,
                         parametric_knots=parametric_knots)
    return create_tensor_mesh(domain, bps)


def dyadic_active_breakpoints(cells: int, levels: int) -> list:
    """Breakpoints for `cells` active cells pre-scaled by 2**levels,
    so `levels` rounds of bisection keep integer midpoints."""
    step = 1 << levels
    return [i * step for i in range(cells + 1)]
