import itertools
import random
from collections import Counter

import pytest

from vunfold import (CheckeredPolygon, DisconnectedError, SimplicialComplex, UnfoldTree,
                     brute_force, build_dual, checkering_of, find_noncheckered_tree,
                     spanning_tree, unfold)
from vunfold import corpus
from vunfold.complex_core import DualGraph
from vunfold.dsu import DisjointSet
from vunfold.hull import gen_hull


def random_tree(dual, rng):
    """Kruskal over a shuffled arc order: a uniform-ish random spanning tree."""
    order = list(range(len(dual.arcs)))
    rng.shuffle(order)
    ds = DisjointSet(dual.facet_count)
    keep = [i for i in order if ds.union(dual.arcs[i].a, dual.arcs[i].b)]
    return UnfoldTree(dual, tuple(sorted(keep)))


def boundary_vertex_oracle(c):
    """Vertices on a ridge that only one facet contains, counted from scratch."""
    count = Counter()
    for f in c.facets:
        for i in range(3):
            count[tuple(sorted(f[:i] + f[i + 1:]))] += 1
    return {v for e, k in count.items() if k == 1 for v in e}


def test_polygon_tree_is_its_own_spanning_tree():
    c = corpus.nested_checkered(2)
    dual = build_dual(c)
    t = spanning_tree(dual)
    assert set(t.arcs) == set(range(len(dual.arcs)))
    assert t.cut_arcs == ()


def test_octahedron_tree_size():
    t = spanning_tree(build_dual(corpus.octahedron()))
    assert len(t.arcs) == 7 and t.is_spanning_tree()


def test_single_facet_tree_empty():
    t = spanning_tree(build_dual(corpus.single_simplex(2)))
    assert t.arcs == ()


def test_disconnected_dual_raises():
    dual = DualGraph(3, ())
    with pytest.raises(DisconnectedError):
        spanning_tree(dual)


def test_spanning_tree_deterministic():
    dual = build_dual(corpus.icosahedron())
    assert spanning_tree(dual, 3).arcs == spanning_tree(dual, 3).arcs


def test_polygon_unfolds_to_itself():
    c = corpus.triforce()
    u = unfold(c, spanning_tree(build_dual(c)))
    assert u.complex.facets == c.facets and u.vertex_map == tuple(range(c.vertex_count))


def test_two_triangles_identity():
    c = corpus.strip(2)
    u = unfold(c, spanning_tree(build_dual(c)))
    assert u.complex.vertex_count == 4


@pytest.mark.parametrize("make", [corpus.octahedron, corpus.cube, corpus.icosahedron,
                                  corpus.dodecahedron, corpus.klein_bottle, corpus.torus])
def test_unfolding_has_all_vertices_on_boundary(make):
    c = make()
    u = unfold(c, spanning_tree(build_dual(c)))
    assert u.complex.facet_count == c.facet_count
    assert build_dual(u.complex).is_tree()
    assert boundary_vertex_oracle(u.complex) == set(range(u.complex.vertex_count))
    assert u.is_unfolded()


def test_folding_map_recovers_source_facets():
    c = corpus.klein_bottle()
    u = unfold(c, spanning_tree(build_dual(c)))
    for f, g in zip(u.complex.facets, c.facets):
        assert tuple(u.vertex_map[x] for x in f) == g
    assert set(u.vertex_map) == set(range(c.vertex_count))


def test_cut_plus_tree_is_all_interior_ridges():
    c = corpus.icosahedron()
    dual = build_dual(c)
    t = spanning_tree(dual, 5)
    assert sorted(t.arcs + t.cut_arcs) == list(range(len(dual.arcs)))


def test_octahedron_cut_count():
    # 8 vertices in, 12 ridges, 7 kept: the unfolded polygon has 8 + 2 = 10 corners
    c = corpus.octahedron()
    u = unfold(c, spanning_tree(build_dual(c)))
    assert u.complex.vertex_count == 10


def test_single_triangle_is_checkered():
    c = corpus.single_simplex(2)
    chk = checkering_of(unfold(c, spanning_tree(build_dual(c))))
    assert chk is not None and chk.white_facets == ()


def test_triforce_checkered_center_white():
    c = corpus.triforce()
    chk = checkering_of(unfold(c, spanning_tree(build_dual(c))))
    assert chk is not None and chk.white_facets == (0,)


def test_two_triangles_not_checkered_and_have_a_cycle():
    c = corpus.strip(2)
    assert checkering_of(unfold(c, spanning_tree(build_dual(c)))) is None
    assert brute_force(c, want_cycle=True)


def test_checkering_is_proper():
    c = corpus.nested_checkered(3)
    dual = build_dual(c)
    chk = checkering_of(unfold(c, spanning_tree(dual)))
    for a, b, _ in dual.arcs:
        assert chk.white[a] != chk.white[b]
    assert all(dual.degree(f) == 3 for f in chk.white_facets)


def test_checkering_invariant_under_relabeling():
    c = corpus.nested_checkered(2)
    rng = random.Random(7)
    perm = list(range(c.facet_count))
    rng.shuffle(perm)
    inv = {p: i for i, p in enumerate(perm)}
    d = SimplicialComplex(2, c.vertex_count, tuple(c.facets[perm[i]] for i in range(len(perm))),
                          c.coords)
    chk_c = checkering_of(unfold(c, spanning_tree(build_dual(c))))
    chk_d = checkering_of(unfold(d, spanning_tree(build_dual(d))))
    assert chk_c is not None and chk_d is not None
    assert {inv[f] for f in chk_c.white_facets} == set(chk_d.white_facets)


def test_noncheckered_tree_for_checkered_polygon_raises():
    c = corpus.triforce()
    with pytest.raises(CheckeredPolygon):
        find_noncheckered_tree(c, spanning_tree(build_dual(c)))


def test_noncheckered_input_returned_unchanged():
    c = corpus.cube()
    t = spanning_tree(build_dual(c))
    assert find_noncheckered_tree(c, t) is t


def test_tetrahedron_bfs_unfolding_is_checkered_and_swapped():
    c = corpus.tetrahedron()
    t = spanning_tree(build_dual(c))
    assert checkering_of(unfold(c, t)) is not None
    t2 = find_noncheckered_tree(c, t)
    assert t2.is_spanning_tree()
    assert len(set(t.arcs) ^ set(t2.arcs)) == 2
    assert checkering_of(unfold(c, t2)) is None


def all_spanning_trees(dual):
    n = dual.facet_count
    for arcs in itertools.combinations(range(len(dual.arcs)), n - 1):
        t = UnfoldTree(dual, arcs)
        if t.is_spanning_tree():
            yield t


# a checkered tree has 3w + 1 facets, so only these sizes can occur
@pytest.mark.parametrize("c", [corpus.tetrahedron(), gen_hull(7, 7), gen_hull(7, 3)],
                         ids=["tetrahedron", "hull7-s7", "hull7-s3"])
def test_every_checkered_tree_can_be_swapped(c):
    dual = build_dual(c)
    checkered = 0
    for t in all_spanning_trees(dual):
        if checkering_of(unfold(c, t)) is None:
            continue
        checkered += 1
        t2 = find_noncheckered_tree(c, t)
        assert t2.is_spanning_tree() and checkering_of(unfold(c, t2)) is None
    assert checkered > 0


def test_random_trees_on_larger_surfaces_stay_unfoldable():
    rng = random.Random(11)
    for c in (corpus.icosahedron(), corpus.klein_bottle()):
        dual = build_dual(c)
        for _ in range(50):
            t = random_tree(dual, rng)
            u = unfold(c, t)
            assert u.is_unfolded()
            assert boundary_vertex_oracle(u.complex) == set(range(u.complex.vertex_count))
