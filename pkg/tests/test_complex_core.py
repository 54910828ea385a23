import itertools

import numpy as np
import pytest

from vunfold import (ComplexError, NonManifoldStar, SimplicialComplex, build_dual,
                     incidence_graph, is_simplicial, validate_pseudomanifold, vertex_rotation)
from vunfold import corpus


def shared_ridge_pairs(c):
    """Oracle: facet pairs sharing exactly d vertices, by brute-force comparison."""
    out = []
    for i, j in itertools.combinations(range(c.facet_count), 2):
        if len(set(c.facets[i]) & set(c.facets[j])) == c.dim:
            out.append((i, j))
    return out


def test_from_facets_infers_dim_and_count():
    c = SimplicialComplex.from_facets([(0, 1, 2), (1, 2, 5)])
    assert c.dim == 2 and c.vertex_count == 6 and c.facet_count == 2


def test_coords_are_read_only():
    c = corpus.tetrahedron()
    with pytest.raises(ValueError):
        c.coords[0, 0] = 5.0


@pytest.mark.parametrize("facets, dim, nv", [
    ([(0, 1)], 2, 3),          # wrong facet size
    ([(0, 1, 7)], 2, 3),       # vertex out of range
])
def test_constructor_rejects_bad_facets(facets, dim, nv):
    with pytest.raises(ComplexError):
        SimplicialComplex(dim, nv, tuple(facets))


def test_validate_ok_on_platonic_solids():
    for name, c in corpus.platonic_solids().items():
        assert validate_pseudomanifold(c).ok, name


@pytest.mark.parametrize("c, code", [
    (SimplicialComplex(2, 0, ()), "empty"),
    (SimplicialComplex(2, 3, ((0, 1, 1),)), "repeated-vertex"),
    (SimplicialComplex.from_facets([(0, 1, 2), (0, 1, 3), (0, 1, 4)]), "ridge-overfull"),
    (SimplicialComplex.from_facets([(0, 1, 2), (3, 4, 5)]), "disconnected"),
    (SimplicialComplex.from_facets([(0, 1, 2)], coords=[[0, 0], [1, 1], [2, 2]]),
     "degenerate-facet"),
])
def test_validate_reports(c, code):
    report = validate_pseudomanifold(c)
    assert not report.ok
    assert code in report.codes()


def test_bowtie_is_disconnected_through_ridges():
    bow = SimplicialComplex.from_facets([(0, 1, 2), (0, 3, 4)])
    assert validate_pseudomanifold(bow).codes() == ["disconnected"]


@pytest.mark.parametrize("make", [corpus.cube, corpus.octahedron, corpus.icosahedron,
                                  corpus.dodecahedron, corpus.triforce,
                                  lambda: corpus.tetra_path(4), lambda: corpus.simplex_boundary(3)])
def test_dual_arcs_match_pairwise_oracle(make):
    c = make()
    dual = build_dual(c)
    assert sorted((a.a, a.b) for a in dual.arcs) == shared_ridge_pairs(c)


def test_cube_dual_has_18_arcs():
    assert len(build_dual(corpus.cube()).arcs) == 18


def test_octahedron_dual_is_cubic():
    dual = build_dual(corpus.octahedron())
    assert all(dual.degree(f) == 3 for f in range(8))
    assert len(dual.arcs) == 12 and not dual.boundary


def test_polygon_dual_is_tree_with_boundary():
    dual = build_dual(corpus.triforce())
    assert dual.is_tree() and len(dual.boundary) == 6


def test_is_simplicial():
    assert is_simplicial(corpus.cube())
    assert is_simplicial(corpus.klein_bottle())
    assert not is_simplicial(corpus.pillow())          # three arcs between the two facets
    assert not is_simplicial(SimplicialComplex(2, 2, ((0, 1, 0),)))  # self-glued facet: a loop


def test_incidence_graph_facet_degree():
    c = corpus.tetra_path(3)
    g = incidence_graph(c)
    assert all(g.facet_degree(f) == 4 for f in range(c.facet_count))
    assert sum(1 for _ in g.arcs()) == 4 * c.facet_count


def _rotation_ok(c, rot):
    fs = rot.facets
    pairs = list(zip(fs, fs[1:])) + ([(fs[-1], fs[0])] if rot.cyclic else [])
    return all(len(set(c.facets[a]) & set(c.facets[b])) == 2 for a, b in pairs)


def test_vertex_rotation_interior_and_boundary():
    o = corpus.octahedron()
    rot = vertex_rotation(o, 0)
    assert rot.cyclic and sorted(rot.facets) == [0, 1, 2, 3] and _rotation_ok(o, rot)
    f = corpus.fan(3)
    rot = vertex_rotation(f, 0)
    assert not rot.cyclic and rot.facets == (0, 1, 2) and _rotation_ok(f, rot)


def test_vertex_rotation_non_manifold_star():
    bow = SimplicialComplex.from_facets([(0, 1, 2), (0, 3, 4)])
    with pytest.raises(NonManifoldStar):
        vertex_rotation(bow, 0)


def test_report_serializes():
    c = SimplicialComplex(2, 3, ((0, 1, 1),))
    d = validate_pseudomanifold(c).to_dict()
    assert d["ok"] is False and d["violations"]


def test_complexes_are_independent_of_input_arrays():
    pts = np.zeros((3, 2))
    pts[1, 0] = pts[2, 1] = 1
    c = SimplicialComplex.from_facets([(0, 1, 2)], coords=pts)
    pts[0, 0] = 9
    assert c.coords[0, 0] == 0
