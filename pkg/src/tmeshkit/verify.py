"""Independent oracles, seeded mesh fuzzing, and theorem cross-checks.

This module is the acceptance engine: it regenerates expected values by
routes independent of the production code paths (brute-force overlap,
direct skeleton scans, pairwise extension enumeration, collocation rank)
and drives seeded, replayable streams of random admissible meshes
through the classifier cross-checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .anchors import anchor_set, index_support, local_knot_vector
from .dualcompat import is_sdc, is_wdc
from .mesh import (Entity, TMesh, build_framed_mesh, create_tensor_mesh,
                   dyadic_active_breakpoints, entity_hull, hull_inside,
                   singleton_dirs, subdiv)
from .regions import BoxRegion, _box_covered
from .splines import bspline_eval_array, parametric_support
from .suitability import atj_union, gtj_union, is_aas, is_sgas, is_wgas


# ---------------------------------------------------------------------------
# brute-force overlap oracle

def knots_overlap_oracle(v1: Sequence[int], v2: Sequence[int]) -> bool:
    """Ground truth for knot-vector overlap of strictly increasing vectors.

    Any merged vector witnessing overlap must contain every entry of both
    inputs, and padding or repeated entries can be dropped without
    breaking the consecutive runs, so the sorted union is the only
    candidate: both inputs must appear as contiguous runs in it.
    """
    merged = sorted(set(v1) | set(v2))
    pos = {v: i for i, v in enumerate(merged)}

    def contiguous(v):
        idx = [pos[x] for x in v]
        return all(idx[i + 1] == idx[i] + 1 for i in range(len(idx) - 1))

    return contiguous(v1) and contiguous(v2)


# ---------------------------------------------------------------------------
# independent abstract-extension oracle

def _gkv_direct(mesh: TMesh, entity: Entity, j: int) -> tuple:
    """Global knot vector via direct scanning of hyperface closures,
    bypassing the raster used by the production path."""
    boxes = [entity_hull(e) for e in mesh.entities[mesh.dim - 1]
             if singleton_dirs(e) == (j,)]
    hull = entity_hull(entity)
    out = []
    for n in range(mesh.domain.extents[j] + 1):
        proj = hull[:j] + ((n, n),) + hull[j + 1:]
        if _box_covered(proj, boxes):
            out.append(n)
    return tuple(out)


def _local_window_direct(gkv, value, offset, length):
    idx = gkv.index(value)
    start = idx - offset
    if start < 0 or start + length > len(gkv):
        raise ValueError("window does not fit")
    return gkv[start:start + length]


def atj_slice_oracle(mesh: TMesh, j: int, n: int) -> BoxRegion:
    """Abstract extension of a slice by pairwise enumeration of anchor
    supports, with knot vectors recomputed by the direct scan."""
    dom = mesh.domain
    kappa = tuple(k for k, p in enumerate(dom.degrees) if p % 2 == 1)
    active = dom.active_spans()
    dim_idx = dom.dim - len(kappa)
    anchors = [e for e in mesh.entities[dim_idx]
               if singleton_dirs(e) == kappa and hull_inside(e, active)]
    ins, outs = [], []
    for a in anchors:
        spans = []
        for k in range(dom.dim):
            gkv = _gkv_direct(mesh, a, k)
            p = dom.degrees[k]
            w = _local_window_direct(gkv, a[k][0], (p + 1) // 2, p + 2)
            spans.append((w[0], w[-1]))
        if not spans[j][0] <= n <= spans[j][1]:
            continue
        box = tuple(spans[:j]) + ((n, n),) + tuple(spans[j + 1:])
        if n in _gkv_direct(mesh, a, j):
            ins.append(box)
        else:
            outs.append(box)
    boxes = []
    for b_in in ins:
        for b_out in outs:
            inter = tuple((max(l1, l2), min(h1, h2))
                          for (l1, h1), (l2, h2) in zip(b_in, b_out))
            if all(lo <= hi for lo, hi in inter):
                boxes.append(inter)
    return BoxRegion(dom.dim, set(boxes))


# ---------------------------------------------------------------------------
# collocation rank and partition of unity

@dataclass(frozen=True)
class RankReport:
    num_anchors: int
    rank: int
    independent: bool
    singular_values: tuple

    def rank_at(self, threshold: float) -> int:
        if not self.singular_values:
            return 0
        top = self.singular_values[0]
        return sum(1 for s in self.singular_values if s > threshold * top)


def _gauss_points(mesh: TMesh, cells) -> np.ndarray:
    dom = mesh.domain
    rules = {p: np.polynomial.legendre.leggauss(p + 1)[0]
             for p in set(dom.degrees)}
    blocks = []
    for cell in sorted(cells):
        axes = []
        for k, (a, b) in enumerate(cell):
            xa = float(dom.parametric_knots[k][a])
            xb = float(dom.parametric_knots[k][b])
            g = rules[dom.degrees[k]]
            axes.append(0.5 * (xa + xb) + 0.5 * (xb - xa) * g)
        grid = np.meshgrid(*axes, indexing="ij")
        blocks.append(np.stack([ax.ravel() for ax in grid], axis=-1))
    return np.concatenate(blocks, axis=0)


def evaluation_matrix(mesh: TMesh, points: np.ndarray) -> np.ndarray:
    """Collocation matrix: one column per anchor, one row per point."""
    dom = mesh.domain
    anchors = anchor_set(mesh)
    mat = np.zeros((len(points), len(anchors)))
    for col, a in enumerate(anchors):
        supp = parametric_support(mesh, a)
        inside = np.ones(len(points), dtype=bool)
        for k, (lo, hi) in enumerate(supp):
            inside &= (points[:, k] >= lo) & (points[:, k] <= hi)
        idx = np.nonzero(inside)[0]
        if not idx.size:
            continue
        vals = np.ones(idx.size)
        for k in range(dom.dim):
            knots_k = dom.parametric_knots[k]
            window = [float(knots_k[m]) for m in local_knot_vector(mesh, a, k)]
            vals *= bspline_eval_array(window, dom.degrees[k], points[idx, k],
                                       domain_right=float(knots_k[-1]))
        mat[idx, col] = vals
    return mat


def linear_independence_rank(mesh: TMesh, threshold: float = 1e-8) -> RankReport:
    """Numerical rank of the collocation matrix sampled on a Gauss grid of
    p_k + 1 points per direction inside every active cell.

    The sampling is exact for piecewise polynomials of coordinate degree
    p, so full rank is a finite certificate of linear independence.
    """
    active = mesh.domain.active_spans()
    cells = [c for c in mesh.cells if hull_inside(c, active)]
    points = _gauss_points(mesh, cells)
    mat = evaluation_matrix(mesh, points)
    anchors = anchor_set(mesh)
    if mat.size == 0:
        return RankReport(len(anchors), 0, not anchors, ())
    svals = np.linalg.svd(mat, compute_uv=False)
    rank = int((svals > threshold * svals[0]).sum())
    return RankReport(num_anchors=len(anchors), rank=rank,
                      independent=rank == len(anchors),
                      singular_values=tuple(float(s) for s in svals))


def rank_verdict_stable(report: RankReport,
                        thresholds: Sequence[float] = (1e-10, 1e-8, 1e-6)) -> bool:
    return len({report.rank_at(t) for t in thresholds}) == 1


def complete_slices(mesh: TMesh, k: int) -> tuple:
    """Indices whose full slice x_k = n lies in the k-orthogonal skeleton."""
    from .mesh import skeleton_mask

    mask = skeleton_mask(mesh, k)
    axes = tuple(a for a in range(mesh.dim) if a != k)
    ok = mask.all(axis=axes) if axes else mask
    return tuple(n for n in range(mesh.domain.extents[k] + 1) if ok[2 * n])


def unity_sample_bounds(mesh: TMesh) -> tuple:
    """Parametric box on which the basis must sum to one.

    Per direction the basis reproduces constants only p complete slices
    away from the domain boundary (the frame carries no anchors), so the
    box runs from the p-th complete slice to the p-th-from-last one.
    """
    dom = mesh.domain
    spans = []
    for k in range(dom.dim):
        p = dom.degrees[k]
        full = complete_slices(mesh, k)
        if len(full) < 2 * p + 1 or full[p] > full[-1 - p]:
            raise ValueError(
                f"direction {k}: too few complete slices for degree {p}; "
                f"no unity region")
        spans.append((float(dom.parametric_knots[k][full[p]]),
                      float(dom.parametric_knots[k][full[-1 - p]])))
    return tuple(spans)


def partition_of_unity(mesh: TMesh, samples: int = 1000, seed: int = 0) -> float:
    """Max deviation of the basis sum from one over uniform random points
    of the unity region."""
    bounds = unity_sample_bounds(mesh)
    rng = np.random.default_rng(seed)
    pts = np.empty((samples, mesh.dim))
    for k, (lo, hi) in enumerate(bounds):
        pts[:, k] = rng.uniform(lo, hi, samples) if lo < hi else lo
    total = evaluation_matrix(mesh, pts).sum(axis=1)
    return float(np.abs(total - 1.0).max())


# ---------------------------------------------------------------------------
# seeded mesh generation

def random_admissible_mesh(seed: int, *, dim: int | None = None,
                           degrees: tuple | None = None, max_steps: int = 40,
                           levels: int | None = None,
                           base_cells: tuple | None = None,
                           direction_mode: str = "mixed",
                           keep: Callable[[TMesh], bool] | None = None) -> TMesh:
    """One random admissible mesh: seeded bisections of a pre-scaled frame
    mesh, rejecting non-integer midpoints by construction.

    direction_mode "single" restricts all bisections to one random
    direction (a cheap way to produce strongly suitable meshes); `keep`
    filters each accepted step, reverting steps whose result it rejects.
    """
    rng = random.Random(seed)
    d = dim if dim is not None else rng.choice((2, 3))
    if degrees is None:
        degrees = tuple(rng.choice((0, 1, 1, 2, 2, 3, 3)) for _ in range(d))
    if levels is None:
        levels = rng.choice((1, 2))
    if base_cells is None:
        base_cells = tuple(rng.randint(2, 3) for _ in range(d))
    mesh = build_framed_mesh(
        degrees, [dyadic_active_breakpoints(c, levels) for c in base_cells])
    single_dir = rng.randrange(d) if direction_mode == "single" else None

    active = mesh.domain.active_spans()
    steps = misses = 0
    while steps < max_steps and misses < 2 * max_steps:
        options = sorted(
            (cell, k)
            for cell in mesh.cells if hull_inside(cell, active)
            for k in range(d)
            if (cell[k][1] - cell[k][0]) >= 2 and (cell[k][1] - cell[k][0]) % 2 == 0
            and (single_dir is None or k == single_dir))
        if not options:
            break
        cell, k = rng.choice(options)
        candidate = subdiv(mesh, cell, k)
        if keep is not None and not keep(candidate):
            misses += 1
            continue
        mesh = candidate
        steps += 1
    return mesh


def mesh_stream(seed: int, count: int, **kwargs) -> Iterable[tuple[int, TMesh]]:
    """Reproducible stream of (sub-seed, mesh) pairs."""
    for k in range(count):
        sub = (seed * 1_000_003 + k) % (1 << 62)
        yield sub, random_admissible_mesh(sub, **kwargs)


def replay_prefix(mesh: TMesh, length: int) -> TMesh:
    """Rebuild the mesh from its initial grid and a refinement-log prefix."""
    out = create_tensor_mesh(mesh.domain, mesh.breakpoints)
    for cell, j in mesh.refinement_log[:length]:
        out = subdiv(out, cell, j)
    return out


# ---------------------------------------------------------------------------
# theorem cross-checks

def crosscheck_aas_sdc(meshes: Iterable[tuple[int, TMesh]]) -> dict:
    """Assert-style report: abstract suitability and strong
    dual-compatibility must agree on every mesh."""
    from .meshio import mesh_to_dict

    checked = 0
    disagreements = []
    for label, mesh in meshes:
        aas = is_aas(mesh)[0]
        sdc = is_sdc(mesh)[0]
        checked += 1
        if aas != sdc:
            disagreements.append({"seed": label, "aas": aas, "sdc": sdc,
                                  "log_length": len(mesh.refinement_log),
                                  "mesh": mesh_to_dict(mesh)})
    return {"checked": checked, "disagreements": disagreements,
            "ok": not disagreements}


def crosscheck_sgas_aas(meshes: Iterable[tuple[int, TMesh]]) -> dict:
    """On strongly geometrically suitable meshes, abstract suitability must
    hold and every abstract extension must sit inside the geometric one."""
    checked = skipped = 0
    failures = []
    for label, mesh in meshes:
        if not is_sgas(mesh)[0]:
            skipped += 1
            continue
        checked += 1
        if not is_aas(mesh)[0]:
            failures.append({"seed": label, "reason": "sgas mesh not aas"})
            continue
        for i in range(mesh.dim):
            if not atj_union(mesh, i).subset(gtj_union(mesh, i)):
                failures.append({"seed": label, "direction": i,
                                 "reason": "abstract extension escapes geometric"})
    return {"checked": checked, "skipped": skipped, "failures": failures,
            "ok": not failures}


def wgas_wdc_counterexample_search(meshes: Iterable[tuple[int, TMesh]]) -> dict:
    """Log (never assert) meshes that are weakly geometrically suitable but
    not weakly dual-compatible; candidates are shrunk by replaying ever
    shorter refinement-log prefixes."""
    checked = wgas_count = 0
    candidates = []
    for label, mesh in meshes:
        checked += 1
        if not is_wgas(mesh)[0]:
            continue
        wgas_count += 1
        if is_wdc(mesh)[0]:
            continue
        shrunk = _shrink_candidate(mesh)
        candidates.append({
            "seed": label,
            "log_length": len(mesh.refinement_log),
            "shrunk_log_length": len(shrunk.refinement_log),
            "mesh": shrunk,
        })
    return {"checked": checked, "wgas": wgas_count, "candidates": candidates}


def _shrink_candidate(mesh: TMesh) -> TMesh:
    for length in range(len(mesh.refinement_log) + 1):
        m = replay_prefix(mesh, length)
        if is_wgas(m)[0] and not is_wdc(m)[0]:
            return m
    return mesh


def child_anchor_inheritance(mesh: TMesh, cell: Entity, j: int) -> dict:
    """Check that each anchor created by one bisection inherits a parent:
    an old anchor with identical off-direction local vectors and a
    support containing the child's.

    Applicable when the mesh and its refinement are both weakly
    geometrically suitable and every active cell has active neighbors in
    three directions; failures under satisfied preconditions are hard
    failures.
    """
    from .mesh import check_three_direction_assumption

    refined = subdiv(mesh, cell, j)
    applicable = (mesh.dim >= 3
                  and check_three_direction_assumption(mesh)
                  and is_wgas(mesh)[0] and is_wgas(refined)[0])
    report = {"applicable": applicable, "new_anchors": 0, "failures": []}
    if not applicable:
        return report
    old = anchor_set(mesh)
    old_set = set(old)
    new_anchors = [a for a in anchor_set(refined) if a not in old_set]
    report["new_anchors"] = len(new_anchors)
    dims = [k for k in range(mesh.dim) if k != j]
    for child in new_anchors:
        child_vecs = {k: local_knot_vector(refined, child, k) for k in dims}
        child_supp = index_support(refined, child)
        parent = None
        for a in old:
            if all(local_knot_vector(mesh, a, k) == child_vecs[k] for k in dims):
                parent_supp = index_support(mesh, a)
                if all(pl <= cl and ch <= ph for (pl, ph), (cl, ch)
                       in zip(parent_supp, child_supp)):
                    parent = a
                    break
        if parent is None:
            report["failures"].append(child)
    report["ok"] = not report["failures"]
    return report
