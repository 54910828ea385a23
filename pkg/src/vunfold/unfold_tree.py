"""Spanning trees of the dual graph, topological unfoldings and checkering.

An unfolding glues the facets back together only along the ridges of a dual
spanning tree; every other ridge is cut, which duplicates the vertices on it.
For surfaces the result is a triangulated polygon without interior vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .complex_core import DualArc, DualGraph, SimplicialComplex, build_dual
from .dsu import DisjointSet
from .errors import CheckeredPolygon, DisconnectedError, SearchExhausted


@dataclass(frozen=True, eq=False)
class UnfoldTree:
    """Spanning tree of a dual graph, stored as sorted arc indices."""

    dual: DualGraph
    arcs: tuple

    @cached_property
    def arc_set(self) -> frozenset:
        return frozenset(self.arcs)

    @property
    def cut_arcs(self) -> tuple:
        keep = self.arc_set
        return tuple(i for i in range(len(self.dual.arcs)) if i not in keep)

    @cached_property
    def adjacency(self) -> tuple:
        """Per facet, ``(neighbour, arc index)`` pairs restricted to tree arcs."""
        adj = [[] for _ in range(self.dual.facet_count)]
        for i in self.arcs:
            a, b, _ = self.dual.arcs[i]
            adj[a].append((b, i))
            adj[b].append((a, i))
        return tuple(tuple(x) for x in adj)

    def is_spanning_tree(self) -> bool:
        n = self.dual.facet_count
        if len(self.arcs) != n - 1 or n == 0:
            return False
        ds = DisjointSet(n)
        for i in self.arcs:
            a, b, _ = self.dual.arcs[i]
            if not ds.union(a, b):
                return False
        return ds.count == 1


def spanning_tree(dual: DualGraph, seed_facet: int = 0) -> UnfoldTree:
    """Breadth-first spanning tree rooted at ``seed_facet``."""
    n = dual.facet_count
    if not 0 <= seed_facet < n:
        raise ValueError(f"seed facet {seed_facet} out of range")
    seen = [False] * n
    seen[seed_facet] = True
    chosen = []
    queue = deque([seed_facet])
    adjacency = dual.adjacency
    while queue:
        f = queue.popleft()
        for g, i in adjacency[f]:
            if not seen[g]:
                seen[g] = True
                chosen.append(i)
                queue.append(g)
    if len(chosen) != n - 1:
        raise DisconnectedError(
            f"dual graph is disconnected: tree reaches {len(chosen) + 1} of {n} facets")
    chosen.sort()
    return UnfoldTree(dual, tuple(chosen))


@dataclass(frozen=True, eq=False)
class UnfoldedComplex:
    """A complex whose dual is a tree, plus its folding map onto the source.

    Facet ``i`` of ``complex`` folds onto facet ``i`` of ``source``; vertex
    ``u`` folds onto ``vertex_map[u]``.
    """

    complex: SimplicialComplex
    source: SimplicialComplex
    tree: UnfoldTree
    vertex_map: tuple

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def facet_count(self) -> int:
        return self.complex.facet_count

    @property
    def facet_map(self) -> range:
        return range(self.complex.facet_count)

    @cached_property
    def dual(self) -> DualGraph:
        """The tree, expressed as a dual graph over unfolded vertex ids."""
        facets = self.complex.facets
        arcs = []
        for i in self.tree.arcs:
            a, b, _ = self.tree.dual.arcs[i]
            ridge = tuple(sorted(set(facets[a]) & set(facets[b])))
            arcs.append(DualArc(a, b, ridge))
        arcs.sort()
        return DualGraph(self.complex.facet_count, tuple(arcs))

    def fold_vertex(self, u: int) -> int:
        return self.vertex_map[u]

    def boundary_vertices(self) -> set:
        """Vertices of the unfolded complex lying on one of its boundary ridges."""
        out = set()
        for ridge, fs in self.complex.ridge_map.items():
            if len(fs) == 1:
                out.update(ridge)
        return out

    def is_unfolded(self) -> bool:
        """Dual is a tree and every codimension-2 face lies on the boundary."""
        if not build_dual(self.complex, validate=False).is_tree():
            return False
        d = self.complex.dim
        if d < 2:
            return True
        boundary_ridges = [r for r, fs in self.complex.ridge_map.items() if len(fs) == 1]
        on_boundary = set()
        for r in boundary_ridges:
            for i in range(len(r)):
                on_boundary.add(r[:i] + r[i + 1:])
        for f in self.complex.facets:
            s = sorted(f)
            for i in range(len(s)):
                for j in range(i + 1, len(s)):
                    face = tuple(x for k, x in enumerate(s) if k not in (i, j))
                    if face not in on_boundary:
                        return False
        return True


def unfold(c: SimplicialComplex, t: UnfoldTree) -> UnfoldedComplex:
    """Glue the facets of ``c`` along tree arcs only, duplicating cut vertices.

    Corner classes are propagated from each facet to its tree children across
    the shared ridge; unfolded vertex ids follow first appearance in facet
    order.
    """
    facets = c.facets
    n = len(facets)
    k = c.dim + 1
    arcs = t.dual.arcs
    adjacency = t.adjacency
    cls = [None] * n
    glued = []                    # (arc, facet a, facet b, ridge corner classes)
    fresh = 0
    for root in range(n):
        if cls[root] is not None:
            continue
        cls[root] = list(range(fresh, fresh + k))
        fresh += k
        stack = [root]
        while stack:
            f = stack.pop()
            ff, cf = facets[f], cls[f]
            for g, i in adjacency[f]:
                if cls[g] is not None:
                    continue
                ridge = arcs[i].ridge
                row, shared = [], []
                for w in facets[g]:
                    if w in ridge:
                        row.append(cf[ff.index(w)])
                        shared.append(row[-1])
                    else:
                        row.append(fresh)
                        fresh += 1
                cls[g] = row
                glued.append((arcs[i].a, arcs[i].b, shared))
                stack.append(g)
    # renumber corner classes by first appearance in facet order; every label
    # in 0..fresh-1 is used, so np.unique returns them in label order
    labels = np.array(cls, dtype=np.int64).reshape(n, k)
    _, first, inverse = np.unique(labels.ravel(), return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    order = np.argsort(first, kind="stable")
    rank[order] = np.arange(len(first))
    new_facets_arr = rank[inverse].reshape(n, k)
    vertex_map = tuple(np.asarray(facets, dtype=np.int64).ravel()[first[order]].tolist())
    new_facets = tuple(map(tuple, new_facets_arr.tolist()))
    coords = None if c.coords is None else c.coords[list(vertex_map)]
    names = None if c.labels is None else tuple(c.labels[v] for v in vertex_map)
    u_complex = SimplicialComplex.trusted(c.dim, len(vertex_map), new_facets, coords, names)
    out = UnfoldedComplex(u_complex, c, t, vertex_map)
    relabel = rank.tolist()
    tree_arcs = sorted(DualArc(a, b, tuple(sorted(relabel[x] for x in shared)))
                       for a, b, shared in glued)
    out.__dict__["dual"] = DualGraph(n, tuple(tree_arcs))
    return out


@dataclass(frozen=True)
class Checkering:
    """Black/white facet coloring of a checkered unfolding (True = white)."""

    white: tuple

    def color(self, f: int) -> str:
        return "white" if self.white[f] else "black"

    @property
    def white_facets(self) -> tuple:
        return tuple(i for i, w in enumerate(self.white) if w)


def _tree_checkering(n: int, adjacency) -> Checkering | None:
    parity = [-1] * n
    parity[0] = 0
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g, _ in adjacency[f]:
            if parity[g] < 0:
                parity[g] = parity[f] ^ 1
                queue.append(g)
    for white_class in (0, 1):
        if all(len(adjacency[f]) == 3 for f in range(n) if parity[f] == white_class):
            return Checkering(tuple(p == white_class for p in parity))
    return None


def checkering_of(u: UnfoldedComplex) -> Checkering | None:
    """Proper 2-coloring of the dual tree whose white facets all have 3 neighbours.

    The coloring is unique up to swapping colors; an empty white class counts,
    so a single facet comes out checkered. Returns None when neither color
    class qualifies.
    """
    if u.dim != 2:
        raise ValueError("checkering is defined for surfaces (dim 2) only")
    return _tree_checkering(u.facet_count, u.tree.adjacency)


def _adjacency_of(n: int, dual: DualGraph, arcs) -> list:
    adj = [[] for _ in range(n)]
    for i in arcs:
        a, b, _ = dual.arcs[i]
        adj[a].append((b, i))
        adj[b].append((a, i))
    return adj


def find_noncheckered_tree(c: SimplicialComplex, t0: UnfoldTree) -> UnfoldTree:
    """Swap single tree arcs until the unfolding is no longer checkered.

    Returns ``t0`` unchanged when it already unfolds to a non-checkered
    polygon. Raises :class:`CheckeredPolygon` when the dual has no arc outside
    the tree, i.e. ``c`` is itself a checkered polygon triangulation, and
    :class:`SearchExhausted` if no single swap works.
    """
    if c.dim != 2:
        raise ValueError("checkering is defined for surfaces (dim 2) only")
    dual = t0.dual
    n = dual.facet_count
    if _tree_checkering(n, t0.adjacency) is None:
        return t0
    candidates = [i for i in t0.cut_arcs if dual.arcs[i].a != dual.arcs[i].b]
    if not candidates:
        raise CheckeredPolygon(
            "the complex is a checkered polygon triangulation: it has a facet path but no facet cycle")

    # parent pointers of t0 rooted at facet 0 give the tree path between any two facets
    parent = [-1] * n
    parent_arc = [-1] * n
    depth = [0] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g, i in t0.adjacency[f]:
            if not seen[g]:
                seen[g] = True
                parent[g], parent_arc[g], depth[g] = f, i, depth[f] + 1
                queue.append(g)

    def tree_path(a: int, b: int) -> list:
        arcs = []
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            arcs.append(parent_arc[a])
            a = parent[a]
        return sorted(arcs)

    tried = 0
    base = set(t0.arcs)
    for e in candidates:
        a, b, _ = dual.arcs[e]
        for r in tree_path(a, b):
            tried += 1
            arcs = (base - {r}) | {e}
            if _tree_checkering(n, _adjacency_of(n, dual, arcs)) is None:
                return UnfoldTree(dual, tuple(sorted(arcs)))
    raise SearchExhausted(
        f"no single tree swap gives a non-checkered unfolding "
        f"({len(candidates)} non-tree arcs, {tried} swaps tried)")
