"""Simplicial complex model, derived graphs and structural validation.

Vertices are dense integer indices. A ridge (codimension-1 face) is identified
by the sorted tuple of its vertex indices, so two facets are glued exactly when
they produce the same ridge tuple.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ComplexError, NonManifoldStar

# smallest/largest singular value of the edge matrix below which a facet is flat
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Abstract d-dimensional facet list with optional vertex coordinates.

    Facets keep the vertex order they were given in; that order is what the
    layout and the file writers use. Repeated vertices inside a facet are
    accepted here and reported by :func:`validate_pseudomanifold`.
    """

    dim: int
    vertex_count: int
    facets: tuple
    coords: np.ndarray | None = None
    labels: tuple | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ComplexError(f"dimension must be >= 1, got {self.dim}")
        facets = tuple(tuple(int(v) for v in f) for f in self.facets)
        for i, f in enumerate(facets):
            if len(f) != self.dim + 1:
                raise ComplexError(
                    f"facet {i} has {len(f)} vertices, expected {self.dim + 1}")
            for v in f:
                if not 0 <= v < self.vertex_count:
                    raise ComplexError(
                        f"facet {i} references vertex {v} outside [0, {self.vertex_count})")
        object.__setattr__(self, "facets", facets)
        if self.coords is not None:
            coords = np.array(self.coords, dtype=float)
            if coords.ndim != 2 or coords.shape[0] != self.vertex_count:
                raise ComplexError(
                    f"coords must have shape ({self.vertex_count}, m), got {coords.shape}")
            if coords.shape[1] < self.dim:
                raise ComplexError(
                    f"ambient dimension {coords.shape[1]} is smaller than dim {self.dim}")
            if not np.all(np.isfinite(coords)):
                raise ComplexError("coords contain non-finite values")
            coords.flags.writeable = False
            object.__setattr__(self, "coords", coords)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.vertex_count:
                raise ComplexError("labels must have one entry per vertex")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_facets(cls, facets: Sequence[Sequence[int]], coords=None, labels=None,
                    dim: int | None = None, vertex_count: int | None = None):
        """Build a complex, inferring ``dim`` and ``vertex_count`` when omitted."""
        facets = [tuple(f) for f in facets]
        if dim is None:
            if not facets:
                raise ComplexError("cannot infer dimension of an empty facet list")
            dim = len(facets[0]) - 1
        if vertex_count is None:
            if coords is not None:
                vertex_count = len(coords)
            else:
                vertex_count = 1 + max((max(f) for f in facets), default=-1)
        return cls(dim, vertex_count, tuple(facets), coords, labels)

    @classmethod
    def trusted(cls, dim: int, vertex_count: int, facets: tuple, coords=None, labels=None):
        """Skip input checks for data derived from an already valid complex."""
        obj = object.__new__(cls)
        if coords is not None:
            coords.flags.writeable = False
        for name, value in (("dim", dim), ("vertex_count", vertex_count), ("facets", facets),
                            ("coords", coords), ("labels", labels)):
            object.__setattr__(obj, name, value)
        return obj

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    @property
    def ambient_dim(self) -> int | None:
        return None if self.coords is None else self.coords.shape[1]

    @cached_property
    def ridge_map(self) -> dict:
        """Ridge tuple -> list of facets containing it (with multiplicity)."""
        rm = defaultdict(list)
        for fi, f in enumerate(self.facets):
            s = sorted(f)
            for i in range(len(s)):
                rm[tuple(s[:i] + s[i + 1:])].append(fi)
        return dict(rm)

    @cached_property
    def vertex_facets(self) -> tuple:
        """Per vertex, the ascending tuple of incident facets."""
        star = [[] for _ in range(self.vertex_count)]
        for fi, f in enumerate(self.facets):
            for v in set(f):
                star[v].append(fi)
        return tuple(tuple(s) for s in star)

    def facet_coords(self, fi: int) -> np.ndarray:
        if self.coords is None:
            raise ComplexError("complex has no coordinates")
        return self.coords[list(self.facets[fi])]

    def __repr__(self):
        return (f"SimplicialComplex(dim={self.dim}, vertices={self.vertex_count}, "
                f"facets={self.facet_count}, coords={'yes' if self.coords is not None else 'no'})")


class Violation(NamedTuple):
    code: str
    message: str
    indices: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    """Machine-checkable certificate; ``ok`` holds iff there are no violations."""

    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def codes(self) -> list:
        return [v.code for v in self.violations]

    def summary(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += [f"  [{v.code}] {v.message}" for v in self.violations]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "violations": [{"code": v.code, "message": v.message,
                                "indices": list(v.indices)} for v in self.violations]}


def degenerate_facets(c: SimplicialComplex) -> list:
    """Indices of facets whose coordinates are affinely dependent."""
    if c.coords is None or not c.facets:
        return []
    pts = c.coords[np.asarray(c.facets)]
    edges = pts[:, 1:, :] - pts[:, :1, :]
    sv = np.linalg.svd(edges, compute_uv=False)
    bad = sv[:, -1] <= DEGENERACY_RTOL * sv[:, 0]
    return [int(i) for i in np.flatnonzero(bad)]


def _facet_components(c: SimplicialComplex) -> list:
    adj = [[] for _ in range(c.facet_count)]
    for fs in c.ridge_map.values():
        for a in fs:
            for b in fs:
                if a != b:
                    adj[a].append(b)
    seen = [False] * c.facet_count
    comps = []
    for s in range(c.facet_count):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            f = queue.popleft()
            for g in adj[f]:
                if not seen[g]:
                    seen[g] = True
                    comp.append(g)
                    queue.append(g)
        comps.append(sorted(comp))
    return comps


def validate_pseudomanifold(c: SimplicialComplex) -> ValidationReport:
    """Check ridge pairing, facet shape, dual connectivity and (with coords) non-degeneracy."""
    cached = c.__dict__.get("_pm_report")
    if cached is not None:
        return cached
    out = []
    if not c.facets:
        out.append(Violation("empty", "complex has no facets"))
    for fi, f in enumerate(c.facets):
        if len(set(f)) != len(f):
            out.append(Violation("repeated-vertex",
                                 f"facet {fi} {f} repeats a vertex", (fi,)))
    overfull = sorted((r, fs) for r, fs in c.ridge_map.items() if len(fs) > 2)
    for ridge, fs in overfull:
        out.append(Violation("ridge-overfull",
                             f"ridge {ridge} lies in {len(fs)} facets {sorted(fs)}",
                             tuple(sorted(fs))))
    if c.facets:
        comps = _facet_components(c)
        if len(comps) > 1:
            others = tuple(comp[0] for comp in comps[1:])
            out.append(Violation("disconnected",
                                 f"dual graph has {len(comps)} components "
                                 f"(first facets {[comp[0] for comp in comps]})", others))
    for fi in degenerate_facets(c):
        out.append(Violation("degenerate-facet",
                             f"facet {fi} has affinely dependent coordinates", (fi,)))
    report = ValidationReport(tuple(out))
    c.__dict__["_pm_report"] = report
    return report


class DualArc(NamedTuple):
    a: int
    b: int
    ridge: tuple


@dataclass(frozen=True, eq=False)
class DualGraph:
    """Facets as nodes, one arc per interior ridge; boundary ridges kept separately."""

    facet_count: int
    arcs: tuple
    boundary: tuple = ()

    @cached_property
    def adjacency(self) -> tuple:
        """Per facet, ``(neighbour, arc index)`` pairs in arc order."""
        adj = [[] for _ in range(self.facet_count)]
        for i, (a, b, _) in enumerate(self.arcs):
            adj[a].append((b, i))
            if a != b:
                adj[b].append((a, i))
        return tuple(tuple(x) for x in adj)

    def degree(self, f: int) -> int:
        return len(self.adjacency[f])

    def is_connected(self) -> bool:
        if self.facet_count == 0:
            return False
        seen = {0}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for g, _ in self.adjacency[f]:
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        return len(seen) == self.facet_count

    def is_tree(self) -> bool:
        return len(self.arcs) == self.facet_count - 1 and self.is_connected()


def build_dual(c: SimplicialComplex, validate: bool = True) -> DualGraph:
    """Dual graph with arcs sorted by (facet pair, ridge)."""
    cached = c.__dict__.get("_dual")
    if cached is not None:
        return cached
    if validate:
        report = validate_pseudomanifold(c)
        if not report.ok:
            raise ComplexError("complex is not a connected pseudo-manifold:\n"
                               + report.summary(), report)
    arcs, boundary = [], []
    for ridge, fs in c.ridge_map.items():
        if len(fs) == 2:
            a, b = sorted(fs)
            arcs.append(DualArc(a, b, ridge))
        elif len(fs) == 1:
            boundary.append((fs[0], ridge))
        else:
            raise ComplexError(f"ridge {ridge} lies in {len(fs)} facets")
    arcs.sort()
    boundary.sort()
    dual = DualGraph(c.facet_count, tuple(arcs), tuple(boundary))
    if validate:
        c.__dict__["_dual"] = dual
    return dual


def is_simplicial(c) -> bool:
    """True iff the dual graph has no multi-arcs and no loops.

    Accepts a complex or an already built :class:`DualGraph`. A complex is
    inspected without pseudo-manifold validation so that self-glued facets
    (which necessarily repeat a vertex) can be classified.
    """
    dual = c if isinstance(c, DualGraph) else build_dual(c, validate=False)
    seen = set()
    for a, b, _ in dual.arcs:
        if a == b or (a, b) in seen:
            return False
        seen.add((a, b))
    return True


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite vertex/facet incidence; arc (v, f) iff v is a vertex of f."""

    vertex_facets: tuple
    facet_vertices: tuple

    def arcs(self):
        for f, vs in enumerate(self.facet_vertices):
            for v in vs:
                yield (v, f)

    def facet_degree(self, f: int) -> int:
        return len(self.facet_vertices[f])


def incidence_graph(c: SimplicialComplex) -> IncidenceGraph:
    return IncidenceGraph(c.vertex_facets, c.facets)


@dataclass(frozen=True)
class VertexRotation:
    """Facets around a vertex of a surface in edge-sharing order."""

    vertex: int
    facets: tuple
    cyclic: bool

    def positions(self) -> dict:
        return {f: i for i, f in enumerate(self.facets)}


def vertex_rotation(c: SimplicialComplex, v: int) -> VertexRotation:
    """Order the facets around ``v`` by successive edge sharing.

    Interior vertices give a cyclic order starting at the lowest-index facet;
    boundary vertices give a linear order starting from the boundary edge with
    the lower far endpoint. Raises :class:`NonManifoldStar` when the star is
    not a single chain or cycle.
    """
    if c.dim != 2:
        raise ValueError("vertex rotations are defined for surfaces (dim 2) only")
    star = c.vertex_facets[v]
    if not star:
        raise NonManifoldStar(v, "vertex has no incident facets")
    link = {}
    by_edge = defaultdict(list)
    for f in star:
        others = tuple(sorted(x for x in c.facets[f] if x != v))
        if len(others) != 2:
            raise NonManifoldStar(v, f"facet {f} repeats vertex {v}")
        link[f] = others
        for x in others:
            by_edge[x].append(f)
    for x, fs in by_edge.items():
        if len(fs) > 2:
            raise NonManifoldStar(v, f"edge ({v},{x}) lies in {len(fs)} facets")
    ends = sorted(x for x, fs in by_edge.items() if len(fs) == 1)
    if len(ends) not in (0, 2):
        raise NonManifoldStar(v, f"star splits into {len(ends) // 2} chains")

    if ends:
        x = ends[0]
        f = by_edge[x][0]
    else:
        f = star[0]
        x = link[f][1]
    start = f
    order = [f]
    while True:
        a, b = link[f]
        x = b if x == a else a
        nxt = [g for g in by_edge[x] if g != f]
        if not nxt or nxt[0] == start:
            break
        f = nxt[0]
        order.append(f)
    if len(order) != len(star):
        raise NonManifoldStar(v, "star is not a single edge-connected fan")
    return VertexRotation(v, tuple(order), not ends)
