import itertools
import math

import numpy as np
import pytest

from vunfold import (CheckeredPolygon, FacetPath, NoFacetCycle, NonSimplicial2Manifold, Scaffold,
                     SimplicialComplex, SingleSimplex, brute_force, crossings, euler_trail,
                     facet_cycle, facet_path, interleaving_count, make_noncrossing, verify_path)
from vunfold import corpus
from vunfold.hull import gen_hull


def path_count_oracle(c):
    """Count facet paths by trying every facet order and every vertex choice."""
    n = c.facet_count
    total = 0
    for order in itertools.permutations(range(n)):
        # consecutive facets must share the hand-over vertex
        choices = [c.facets[order[0]]]
        for a, b in zip(order, order[1:]):
            choices.append(tuple(set(c.facets[a]) & set(c.facets[b])))
        choices.append(c.facets[order[-1]])
        for vs in itertools.product(*choices):
            if all(vs[i] != vs[i + 1] for i in range(n)):
                total += 1
    return total


def angular_crossings(c, p):
    """Interleaving count with rotations taken from embedded geometry.

    Facets around v are ordered by the angle of their centroid in the tangent
    plane at v (the plane itself for 2D coordinates, normal = v for convex
    polyhedra after centring on the vertex centroid).
    """
    X = c.coords - c.coords.mean(axis=0)
    trans = {}
    vs, fs = p.vertices, p.facets
    for i in range(1, len(fs)):
        trans.setdefault(vs[i], []).append((fs[i - 1], fs[i]))
    if p.cyclic and len(fs) > 1:
        trans.setdefault(vs[0], []).append((fs[-1], fs[0]))
    count = 0
    for v, ts in trans.items():
        star = [f for f in range(c.facet_count) if v in c.facets[f]]
        if X.shape[1] == 2:
            e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
            pos = {f: X[list(c.facets[f])].mean(axis=0) - X[v] for f in star}
        else:
            nrm = X[v] / np.linalg.norm(X[v])
            e1 = np.cross(nrm, [1.0, 0.3, 0.1])
            e1 /= np.linalg.norm(e1)
            e2 = np.cross(nrm, e1)
            assert np.all(np.isfinite(e2))
            pos = {f: X[list(c.facets[f])].mean(axis=0) - X[v] for f in star}
        ang = {f: math.atan2(pos[f] @ e2, pos[f] @ e1) for f in star}
        rank = {f: i for i, f in enumerate(sorted(star, key=ang.get))}
        for (a, b), (x, y) in itertools.combinations(ts, 2):
            lo, hi = sorted((rank[a], rank[b]))
            if (lo < rank[x] < hi) != (lo < rank[y] < hi):
                count += 1
    return count


# --- euler trail --------------------------------------------------------------

def test_euler_trail_triangle_cycle():
    p = euler_trail(Scaffold(((0, 1), (1, 2), (0, 2)), 3))
    assert p.cyclic and sorted(p.facets) == [0, 1, 2]


def test_euler_trail_starts_at_lowest_odd_vertex():
    p = euler_trail(Scaffold(((1, 2), (2, 3)), 4))
    assert p.vertices[0] == 1 and p.vertices[-1] == 3


def test_euler_trail_disconnected_raises():
    with pytest.raises(Exception):
        euler_trail(Scaffold(((0, 1), (0, 1), (2, 3), (2, 3)), 4))


# --- facet_path -----------------------------------------------------------------

PATH_CASES = {
    "tetrahedron": corpus.tetrahedron, "cube": corpus.cube, "octahedron": corpus.octahedron,
    "icosahedron": corpus.icosahedron, "dodecahedron": corpus.dodecahedron,
    "triforce": corpus.triforce, "nested3": lambda: corpus.nested_checkered(3),
    "fan5": lambda: corpus.fan(5), "wheel6": lambda: corpus.fan(6, closed=True),
    "klein": corpus.klein_bottle, "torus": corpus.torus, "pillow": corpus.pillow,
    "tp5": lambda: corpus.tetra_path(5), "bd4": lambda: corpus.simplex_boundary(3),
    "cross3": corpus.cross_polytope_boundary, "bd5": lambda: corpus.simplex_boundary(4),
    "circle": lambda: corpus.circle(6), "tri": lambda: corpus.single_simplex(2),
    "tet": lambda: corpus.single_simplex(3), "hull50": lambda: gen_hull(50, 2),
}


@pytest.mark.parametrize("name", sorted(PATH_CASES))
def test_facet_path_valid(name):
    c = PATH_CASES[name]()
    p = facet_path(c)
    assert verify_path(c, p).ok
    assert sorted(p.facets) == list(range(c.facet_count))


def test_facet_path_deterministic():
    c = gen_hull(60, 4)
    assert facet_path(c) == facet_path(c)


def test_triforce_path_is_open_with_four_facets():
    c = corpus.triforce()
    p = facet_path(c)
    assert len(p) == 4 and not p.cyclic
    assert brute_force(c) and not brute_force(c, want_cycle=True)


def test_single_tetrahedron_path():
    c = corpus.single_simplex(3)
    p = facet_path(c)
    assert p.facets == (0,) and verify_path(c, p).ok


# --- facet_cycle ------------------------------------------------------------------

@pytest.mark.parametrize("name", ["tetrahedron", "cube", "octahedron", "icosahedron",
                                  "dodecahedron", "klein", "torus", "tp5", "bd4", "cross3",
                                  "bd5", "circle", "hull50", "wheel6", "fan5"])
def test_facet_cycle_valid(name):
    c = PATH_CASES[name]()
    p = facet_cycle(c)
    assert p.cyclic and verify_path(c, p).ok


def test_facet_cycle_start_facet():
    c = corpus.cube()
    p = facet_cycle(c, start_facet=7)
    assert p.facets[0] == 7 and p.cyclic and verify_path(c, p).ok


@pytest.mark.parametrize("make, exc", [
    (corpus.triforce, CheckeredPolygon),
    (lambda: corpus.nested_checkered(2), CheckeredPolygon),
    (lambda: corpus.single_simplex(2), CheckeredPolygon),
    (lambda: corpus.single_simplex(3), SingleSimplex),
    (lambda: corpus.single_simplex(4), SingleSimplex),
    (corpus.pillow, NonSimplicial2Manifold),
])
def test_facet_cycle_exceptions(make, exc):
    with pytest.raises(exc) as info:
        facet_cycle(make())
    assert info.value.reason == exc.__name__


def test_open_curve_has_no_cycle():
    c = SimplicialComplex(1, 4, ((0, 1), (1, 2), (2, 3)))
    with pytest.raises(NoFacetCycle):
        facet_cycle(c)
    assert verify_path(c, facet_path(c)).ok


# --- verify_path --------------------------------------------------------------------

@pytest.mark.parametrize("p, code", [
    (FacetPath((0, 1, 2), (0, 0)), "facet-repeated"),
    (FacetPath((0, 1), (0,)), "facet-missing"),
    (FacetPath((0, 0, 1), (0, 1)), "degenerate-transition"),
    (FacetPath((0, 3, 2), (0, 1)), "vertex-not-in-facet"),
    (FacetPath((0, 1, 9), (0, 5)), "facet-out-of-range"),
])
def test_verify_path_violations(p, code):
    c = corpus.strip(2)  # facets (0,1,2), (1,2,3)
    assert code in verify_path(c, p).codes()


def test_verify_path_accepts_valid_strip_path():
    assert verify_path(corpus.strip(2), FacetPath((0, 1, 3), (0, 1))).ok


def test_path_container_helpers():
    p = FacetPath((5, 4, 5, 1, 5), (3, 4, 10, 0))
    assert p.cyclic and len(p) == 4
    r = p.rotated(10)
    assert r.facets == (10, 0, 3, 4) and r.vertices[0] == r.vertices[-1] == 5
    assert FacetPath.from_dict(p.to_dict()) == p
    assert p.canonical() == p.reversed().canonical()
    assert p.nodes()[:3] == [("v", 5), ("f", 3), ("v", 4)]


# --- brute force --------------------------------------------------------------------

def test_single_triangle_has_six_paths():
    assert len(brute_force(corpus.single_simplex(2))) == 6


@pytest.mark.parametrize("make", [lambda: corpus.strip(2), lambda: corpus.strip(3),
                                  corpus.triforce, lambda: corpus.fan(4), corpus.tetrahedron,
                                  lambda: corpus.single_simplex(3)])
def test_brute_force_matches_permutation_oracle(make):
    c = make()
    found = brute_force(c)
    assert len(found) == path_count_oracle(c)
    assert all(verify_path(c, p).ok for p in found)
    assert len({(p.vertices, p.facets) for p in found}) == len(found)


def test_brute_force_cycles_are_unique_up_to_symmetry():
    cycles = brute_force(corpus.tetrahedron(), want_cycle=True)
    assert cycles and len({p.canonical() for p in cycles}) == len(cycles)
    assert all(p.cyclic and p.facets[0] == 0 for p in cycles)


def test_brute_force_cap_and_limit():
    with pytest.raises(ValueError):
        brute_force(corpus.cube())
    assert len(brute_force(corpus.strip(4), limit=3)) == 3


# --- noncrossing --------------------------------------------------------------------

def test_octahedron_top_crossing_is_removed():
    c = corpus.octahedron_top()
    p = FacetPath((1, 0, 3, 0, 1), (0, 2, 1, 3))
    assert verify_path(c, p).ok
    assert interleaving_count(c, p) == 1 == angular_crossings(c, p)
    q = make_noncrossing(c, p)
    assert verify_path(c, q).ok
    assert interleaving_count(c, q) == 0 == angular_crossings(c, q)


@pytest.mark.parametrize("make", [corpus.octahedron, corpus.cube, corpus.icosahedron,
                                  lambda: corpus.fan(6, closed=True), lambda: gen_hull(40, 9)])
def test_make_noncrossing_on_embedded_surfaces(make):
    c = make()
    for p in (facet_path(c), facet_cycle(c)):
        q = make_noncrossing(c, p)
        assert verify_path(c, q).ok and q.cyclic == p.cyclic
        assert crossings(c, q) == [] and angular_crossings(c, q) == 0


def test_crossing_counts_agree_with_geometry_on_enumerated_paths():
    c = corpus.octahedron_top()
    for p in brute_force(c):
        assert interleaving_count(c, p) == angular_crossings(c, p)


def test_make_noncrossing_rejects_solids():
    with pytest.raises(ValueError):
        make_noncrossing(corpus.tetra_path(2), facet_path(corpus.tetra_path(2)))
