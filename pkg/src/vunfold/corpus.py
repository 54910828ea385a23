"""Named test complexes: platonic surfaces, polygon triangulations, fans,
abstract closed surfaces and small 3-manifolds."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .complex_core import SimplicialComplex, vertex_rotation


def single_simplex(d: int = 2) -> SimplicialComplex:
    coords = np.vstack([np.zeros(d), np.eye(d)])
    return SimplicialComplex(d, d + 1, (tuple(range(d + 1)),), coords)


def tetrahedron() -> SimplicialComplex:
    coords = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    facets = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]
    return SimplicialComplex(2, 4, tuple(facets), coords)


def octahedron() -> SimplicialComplex:
    coords = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0], [0, 0, -1]],
                      dtype=float)
    ring = [1, 2, 3, 4]
    facets = [(0, ring[i], ring[(i + 1) % 4]) for i in range(4)]
    facets += [(5, ring[(i + 1) % 4], ring[i]) for i in range(4)]
    return SimplicialComplex(2, 6, tuple(facets), coords)


def octahedron_top() -> SimplicialComplex:
    """The four triangles around the apex of the octahedron."""
    o = octahedron()
    return SimplicialComplex(2, 5, o.facets[:4], o.coords[:5])


def cube() -> SimplicialComplex:
    """Cube surface split into 12 triangles (one diagonal per square)."""
    coords = np.array(list(itertools.product((0.0, 1.0), repeat=3)))
    # vertex index = 4x + 2y + z
    squares = [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3)]
    facets = []
    for a, b, c, d in squares:
        facets += [(a, b, c), (a, c, d)]
    return SimplicialComplex(2, 8, tuple(facets), coords)


def icosahedron() -> SimplicialComplex:
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            pts += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]
    coords = np.array(pts, dtype=float)
    n = len(coords)
    near = lambda i, j: abs(np.linalg.norm(coords[i] - coords[j]) - 2.0) < 1e-9
    facets = [t for t in itertools.combinations(range(n), 3)
              if near(t[0], t[1]) and near(t[1], t[2]) and near(t[0], t[2])]
    return SimplicialComplex(2, n, tuple(facets), coords)


def _dual_polyhedron(c: SimplicialComplex) -> SimplicialComplex:
    """Polar dual of a convex triangulated surface, polygons fanned into triangles."""
    centers = np.array([c.coords[list(f)].mean(axis=0) for f in c.facets])
    centers /= np.linalg.norm(centers, axis=1)[:, None]
    facets = []
    for v in range(c.vertex_count):
        ring = vertex_rotation(c, v).facets
        facets += [(ring[0], ring[i], ring[i + 1]) for i in range(1, len(ring) - 1)]
    return SimplicialComplex(2, len(centers), tuple(facets), centers)


def dodecahedron() -> SimplicialComplex:
    """Dodecahedron surface, each pentagon fanned into 3 triangles (36 facets)."""
    return _dual_polyhedron(icosahedron())


def platonic_solids() -> dict:
    return {"tetrahedron": tetrahedron(), "cube": cube(), "octahedron": octahedron(),
            "icosahedron": icosahedron(), "dodecahedron": dodecahedron()}


# --- polygon triangulations -------------------------------------------------

def polygon_from_tree(parents, edge_choice=0) -> SimplicialComplex:
    """Triangulated polygon whose dual tree is given by parent pointers.

    ``parents[i]`` is the parent facet of facet ``i`` (``parents[0]`` is
    ignored). Each child is glued to a free edge of its parent, chosen by
    ``edge_choice`` (an int, or a sequence with one entry per facet).
    Coordinates come from reflecting the parent's far vertex across the edge,
    so every triangle is equilateral.
    """
    n = len(parents)
    coords = [np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([0.5, math.sqrt(3) / 2])]
    facets = [(0, 1, 2)]
    free = [[(0, 1), (1, 2), (0, 2)]]
    for i in range(1, n):
        p = parents[i]
        if not 0 <= p < i:
            raise ValueError("parents must point to earlier facets")
        if not free[p]:
            raise ValueError(f"facet {p} has more than 3 neighbours")
        choice = edge_choice if isinstance(edge_choice, int) else edge_choice[i]
        a, b = free[p].pop(choice % len(free[p]))
        (far,) = [x for x in facets[p] if x not in (a, b)]
        pa, pb, pf = coords[a], coords[b], coords[far]
        mid = (pa + pb) / 2
        w = len(coords)
        coords.append(2 * mid - pf)
        facets.append((a, b, w))
        free.append([(a, w), (b, w)])
    return SimplicialComplex(2, len(coords), tuple(facets), np.array(coords))


def triforce() -> SimplicialComplex:
    """Central triangle with one ear on each edge."""
    return polygon_from_tree([0, 0, 0, 0])


def fan(k: int, closed: bool = False) -> SimplicialComplex:
    """``k`` triangles around vertex 0; ``closed`` makes a wheel (needs k >= 3)."""
    if closed and k < 3:
        raise ValueError("a closed fan needs at least 3 triangles")
    if closed:
        angles = [2 * math.pi * i / k for i in range(k)]
        rim = k
    else:
        # a span below a straight angle keeps k = 1 non-degenerate
        span = 1.5 * math.pi * k / (k + 1)
        angles = [span * i / k for i in range(k + 1)]
        rim = k + 1
    coords = [[0.0, 0.0]] + [[math.cos(a), math.sin(a)] for a in angles]
    facets = [(0, 1 + i, 1 + (i + 1) % rim) for i in range(k)]
    return SimplicialComplex(2, len(coords), tuple(facets), np.array(coords))


def strip(k: int) -> SimplicialComplex:
    """Zig-zag strip of ``k`` triangles (a path-shaped dual)."""
    coords = [[i / 2, (i % 2) * math.sqrt(3) / 2] for i in range(k + 2)]
    facets = [(i, i + 1, i + 2) for i in range(k)]
    return SimplicialComplex(2, k + 2, tuple(facets), np.array(coords))


def _tree_codes(n: int, max_degree: int = 3):
    """Parent arrays of all unlabelled trees on ``n`` nodes with bounded degree.

    Grown one leaf at a time from the trees on ``n - 1`` nodes and
    deduplicated by a canonical unrooted encoding.
    """
    level = [[0]]
    for size in range(2, n + 1):
        seen, nxt = set(), []
        for parents in level:
            deg = [0] * len(parents)
            for i in range(1, len(parents)):
                deg[i] += 1
                deg[parents[i]] += 1
            for p in range(len(parents)):
                if deg[p] < max_degree:
                    cand = parents + [p]
                    key = _unrooted_key(cand)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(cand)
        level = nxt
    return level


def _unrooted_key(parents):
    n = len(parents)
    adj = [[] for _ in range(n)]
    for i in range(1, n):
        adj[i].append(parents[i])
        adj[parents[i]].append(i)

    def encode(v, parent):
        return "(" + "".join(sorted(encode(w, v) for w in adj[v] if w != parent)) + ")"

    return min(encode(r, -1) for r in range(n))


def all_polygon_triangulations(max_facets: int = 9) -> list:
    """One triangulated polygon per dual tree shape with up to ``max_facets`` facets."""
    out = []
    for n in range(1, max_facets + 1):
        for parents in _tree_codes(n):
            out.append(polygon_from_tree(_bfs_relabel(parents)))
    return out


def _bfs_relabel(parents):
    """Relabel a tree so every parent precedes its children."""
    n = len(parents)
    adj = [[] for _ in range(n)]
    for i in range(1, n):
        adj[i].append(parents[i])
        adj[parents[i]].append(i)
    order, new_parent = [0], {0: 0}
    for v in order:
        for w in sorted(adj[v]):
            if w not in new_parent:
                new_parent[w] = v
                order.append(w)
    index = {v: i for i, v in enumerate(order)}
    return [index[new_parent[v]] for v in order]


def nested_checkered(depth: int) -> SimplicialComplex:
    """Checkered polygon triangulation built in layers.

    Depth 1 is the triforce (white centre, three black ears); each further
    layer hangs a white facet with two new black ears off every black leaf.
    """
    parents = [0]
    white = [True]
    leaves = []
    for _ in range(3):
        parents.append(0)
        white.append(False)
        leaves.append(len(parents) - 1)
    for _ in range(depth - 1):
        new_leaves = []
        for leaf in leaves:
            parents.append(leaf)
            white.append(True)
            w = len(parents) - 1
            for _ in range(2):
                parents.append(w)
                white.append(False)
                new_leaves.append(len(parents) - 1)
        leaves = new_leaves
    return polygon_from_tree(parents)


# --- abstract closed surfaces ----------------------------------------------

def _grid_surface(m: int, n: int, twist: bool) -> SimplicialComplex:
    def vid(i, j):
        if i == m:
            i = 0
            if twist:
                j = -j
        return (i % m) * n + (j % n)

    facets = []
    for i in range(m):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            facets += [(a, b, c), (a, c, d)]
    return SimplicialComplex(2, m * n, tuple(facets))


def klein_bottle(m: int = 4, n: int = 4) -> SimplicialComplex:
    """Abstract (coordinate-free) Klein bottle triangulated from an m x n grid."""
    return _grid_surface(m, n, twist=True)


def torus(m: int = 4, n: int = 4) -> SimplicialComplex:
    """Abstract torus triangulated from an m x n grid."""
    return _grid_surface(m, n, twist=False)


def pillow() -> SimplicialComplex:
    """Two triangles glued along all three edges: a sphere with a multi-arc dual."""
    return SimplicialComplex(2, 3, ((0, 1, 2), (0, 2, 1)))


# --- higher dimensions -----------------------------------------------------

def tetra_path(k: int) -> SimplicialComplex:
    """``k`` tetrahedra glued face to face in a row, on the moment curve."""
    t = np.arange(k + 3, dtype=float)
    coords = np.stack([t, t ** 2, t ** 3], axis=1)
    facets = [(i, i + 1, i + 2, i + 3) for i in range(k)]
    return SimplicialComplex(3, k + 3, tuple(facets), coords)


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex: d+2 facets of dimension d, in R^(d+1)."""
    coords = np.eye(d + 2)[:, : d + 1]
    coords[-1] = -np.ones(d + 1) / (d + 1) * 0.7
    facets = list(itertools.combinations(range(d + 2), d + 1))
    return SimplicialComplex(d, d + 2, tuple(facets), coords)


def cross_polytope_boundary(d: int = 3) -> SimplicialComplex:
    """Boundary of the (d+1)-dimensional cross-polytope (2^(d+1) facets)."""
    n = d + 1
    coords = np.vstack([np.eye(n), -np.eye(n)])
    facets = []
    for signs in itertools.product((0, 1), repeat=n):
        facets.append(tuple(i + n * s for i, s in enumerate(signs)))
    return SimplicialComplex(d, 2 * n, tuple(facets), coords)


def circle(k: int) -> SimplicialComplex:
    """1-manifold: a cycle of ``k`` edges."""
    return SimplicialComplex(1, k, tuple((i, (i + 1) % k) for i in range(k)))
