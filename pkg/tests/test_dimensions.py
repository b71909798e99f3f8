"""Dimension edges: the machinery is generic in d, so exercise the ends of
the desk-scale range (1D meshes, 4D meshes with 2-dimensional junctions)."""

from tmeshkit.mesh import (IndexDomain, build_framed_mesh, create_tensor_mesh,
                           is_admissible, subdiv)
from tmeshkit.anchors import anchor_set, local_knot_vector
from tmeshkit.dualcompat import is_sdc, is_wdc
from tmeshkit.suitability import is_aas, is_sgas, is_wgas
from tmeshkit.topology import find_tjunctions
from tmeshkit.verify import linear_independence_rank, partition_of_unity


def test_one_dimensional_mesh_stack():
    mesh = build_framed_mesh((2,), [[0, 2, 4, 6, 8]])
    assert is_admissible(mesh)[0]
    assert find_tjunctions(mesh) == ()
    mesh = subdiv(mesh, ((3, 5),), 0)
    assert is_admissible(mesh)[0]
    anchors = anchor_set(mesh)
    assert anchors
    assert all(len(local_knot_vector(mesh, a, 0)) == 4 for a in anchors)
    assert is_aas(mesh)[0] and is_sdc(mesh)[0] and is_wdc(mesh)[0]
    report = linear_independence_rank(mesh)
    assert report.independent
    assert partition_of_unity(mesh, samples=200, seed=3) < 1e-10


def test_four_dimensional_mesh_stack():
    mesh = build_framed_mesh((1, 1, 1, 1), [[0, 2, 4]] * 4)
    cell = ((1, 3), (1, 3), (1, 3), (1, 3))
    refined = subdiv(mesh, cell, 3)
    assert is_admissible(refined)[0]
    tjs = find_tjunctions(refined)
    assert tjs
    # junctions are codimension-2: two-dimensional faces here
    assert {sum(1 for a, b in t.entity if a < b) for t in tjs} == {2}
    assert {t.odir for t in tjs} == {3}
    assert {t.pdir for t in tjs} == {0, 1, 2}
    assert all(t.valence == 3 for t in tjs)
    # one orthogonal direction only: strongly suitable, hence the rest
    assert is_sgas(refined)[0] and is_wgas(refined)[0]
    assert is_aas(refined)[0] == is_sdc(refined)[0] == True  # noqa: E712
    assert is_wdc(refined)[0]
    report = linear_independence_rank(refined)
    assert report.independent
    assert partition_of_unity(refined, samples=200, seed=4) < 1e-10
