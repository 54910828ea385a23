"""Facet paths and cycles: extraction, pipeline, uncrossing, checking, enumeration."""

from __future__ import annotations

from dataclasses import dataclass

from .complex_core import (SimplicialComplex, ValidationReport, Violation, build_dual,
                           is_simplicial, vertex_rotation)
from .errors import (CheckeredPolygon, ComplexError, DisconnectedError, InvariantError,
                     NoFacetCycle, NonSimplicial2Manifold, SingleSimplex)
from .scaffold import (Scaffold, build_even_scaffold_2d, build_even_scaffold_d,
                       build_scaffold_2d, connect)
from .unfold_tree import checkering_of, find_noncheckered_tree, spanning_tree, unfold


@dataclass(frozen=True)
class FacetPath:
    """Trail ``v0, f1, v1, ..., fk, vk`` through the incidence graph.

    ``vertices`` has one more entry than ``facets``; the path is a cycle when
    its first and last vertex coincide.
    """

    vertices: tuple
    facets: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "facets", tuple(int(f) for f in self.facets))
        if len(self.vertices) != len(self.facets) + 1:
            raise ValueError("a facet path needs exactly one more vertex than facets")

    @property
    def cyclic(self) -> bool:
        return len(self.facets) > 0 and self.vertices[0] == self.vertices[-1]

    def __len__(self):
        return len(self.facets)

    def nodes(self) -> list:
        """Alternating ``[('v', v0), ('f', f1), ('v', v1), ...]`` node list."""
        out = [("v", self.vertices[0])]
        for f, v in zip(self.facets, self.vertices[1:]):
            out += [("f", f), ("v", v)]
        return out

    def steps(self):
        """Yield ``(entry, facet, exit)`` triples."""
        vs = self.vertices
        for i, f in enumerate(self.facets):
            yield vs[i], f, vs[i + 1]

    def arcs(self) -> list:
        out = []
        for a, f, b in self.steps():
            out += [(a, f), (b, f)]
        return out

    def reversed(self) -> "FacetPath":
        return FacetPath(self.vertices[::-1], self.facets[::-1])

    def mapped(self, vertex_map) -> "FacetPath":
        return FacetPath(tuple(vertex_map[v] for v in self.vertices), self.facets)

    def rotated(self, facet: int) -> "FacetPath":
        """Rotate a cycle so that ``facet`` comes first."""
        if not self.cyclic:
            raise ValueError("only cycles can be rotated")
        i = self.facets.index(facet)
        fs = self.facets[i:] + self.facets[:i]
        vs = self.vertices[i:-1] + self.vertices[:i] + (self.vertices[i],)
        return FacetPath(vs, fs)

    def canonical(self) -> "FacetPath":
        """Cycles: lowest facet first, then the lexicographically smaller direction."""
        if not self.cyclic:
            return min(self, self.reversed(), key=lambda p: (p.facets, p.vertices))
        f0 = min(self.facets)
        a = self.rotated(f0)
        b = self.reversed().rotated(f0)
        return min(a, b, key=lambda p: (p.facets, p.vertices))

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "facets": list(self.facets),
                "cyclic": self.cyclic}

    @classmethod
    def from_dict(cls, d: dict) -> "FacetPath":
        return cls(tuple(d["vertices"]), tuple(d["facets"]))


def euler_trail(s: Scaffold) -> FacetPath:
    """Euler trail of a connected scaffold, read as a facet path.

    Each facet is an edge between its two attached vertices. The trail starts
    at the lowest odd vertex if there is one, otherwise at the lowest attached
    vertex of facet 0; at every vertex the lowest unused facet is taken first.
    """
    n = s.facet_count
    if n == 0:
        raise ValueError("empty scaffold")
    att = s.attachments
    inc = [[] for _ in range(s.vertex_count)]
    for f in range(n - 1, -1, -1):
        a, b = att[f]
        inc[a].append(f)
        inc[b].append(f)
    odd = s.odd_vertices
    if len(odd) > 2:
        raise ValueError(f"scaffold has {len(odd)} odd vertices")
    start = odd[0] if odd else att[0][0]
    used = bytearray(n)
    stack = [(start, -1)]
    out = []
    while stack:
        v, f_in = stack[-1]
        row = inc[v]
        while row and used[row[-1]]:
            row.pop()
        if row:
            f = row.pop()
            used[f] = 1
            a, b = att[f]
            stack.append((b if a == v else a, f))
        else:
            stack.pop()
            out.append((v, f_in))
    if len(out) != n + 1:
        raise DisconnectedError(f"scaffold is disconnected: trail covers {len(out) - 1} of {n} facets")
    out.reverse()
    return FacetPath(tuple(v for v, _ in out), tuple(f for _, f in out[1:]))


def _trivial_path(c: SimplicialComplex) -> FacetPath:
    a, b = sorted(c.facets[0])[:2]
    return FacetPath((a, b), (0,))


def _one_dim_scaffold(c: SimplicialComplex) -> Scaffold:
    # in dimension 1 each facet is an edge and must use both of its vertices
    return Scaffold(tuple(tuple(sorted(f)) for f in c.facets), c.vertex_count)


def facet_path(c: SimplicialComplex, seed_facet: int = 0) -> FacetPath:
    """A facet path of a connected pseudo-manifold of any dimension."""
    dual = build_dual(c)
    if c.facet_count == 1:
        return _trivial_path(c)
    if c.dim == 1:
        return euler_trail(_one_dim_scaffold(c))
    u = unfold(c, spanning_tree(dual, seed_facet))
    s = build_scaffold_2d(u) if c.dim == 2 else build_even_scaffold_d(u)
    s = connect(u.complex, s, dual=u.dual)
    return euler_trail(s).mapped(u.vertex_map)


def facet_cycle(c: SimplicialComplex, start_facet: int | None = None,
                seed_facet: int = 0) -> FacetPath:
    """A facet cycle, optionally rotated to begin with ``start_facet``.

    Raises a :class:`NoFacetCycle` subclass naming why none is produced:
    :class:`CheckeredPolygon`, :class:`SingleSimplex` or
    :class:`NonSimplicial2Manifold`.
    """
    dual = build_dual(c)
    if c.dim == 1:
        s = _one_dim_scaffold(c)
        if not s.is_even:
            raise NoFacetCycle("a 1-manifold with boundary has no facet cycle")
        p = euler_trail(s)
    elif c.dim == 2:
        if not is_simplicial(dual):
            raise NonSimplicial2Manifold(
                "dual graph has multi-arcs or loops; only a facet path is guaranteed")
        t = spanning_tree(dual, seed_facet)
        if checkering_of(unfold(c, t)) is not None:
            t = find_noncheckered_tree(c, t)
        u = unfold(c, t)
        s = connect(u.complex, build_even_scaffold_2d(u), dual=u.dual)
        p = euler_trail(s).mapped(u.vertex_map)
    else:
        if c.facet_count == 1:
            raise SingleSimplex("a single d-simplex (d >= 3) has no facet cycle")
        u = unfold(c, spanning_tree(dual, seed_facet))
        s = connect(u.complex, build_even_scaffold_d(u), dual=u.dual)
        p = euler_trail(s).mapped(u.vertex_map)
    if not p.cyclic:
        raise InvariantError("even scaffold produced an open trail")
    if start_facet is not None:
        p = p.rotated(start_facet)
    return p


def verify_path(c: SimplicialComplex, p: FacetPath) -> ValidationReport:
    """Check that ``p`` is a facet path of ``c`` covering every facet once."""
    out = []
    n = c.facet_count
    seen = {}
    for i, f in enumerate(p.facets):
        if not 0 <= f < n:
            out.append(Violation("facet-out-of-range", f"step {i}: facet {f} does not exist", (i,)))
            continue
        if f in seen:
            out.append(Violation("facet-repeated",
                                 f"facet {f} repeated at steps {seen[f]} and {i}", (f,)))
        else:
            seen[f] = i
    missing = [f for f in range(n) if f not in seen]
    if missing:
        out.append(Violation("facet-missing", f"{len(missing)} facet(s) not visited",
                             tuple(missing)))
    arcs = set()
    for i, (a, f, b) in enumerate(p.steps()):
        if a == b:
            out.append(Violation("degenerate-transition",
                                 f"step {i}: enters and leaves facet {f} at vertex {a}", (i,)))
        if 0 <= f < n:
            fv = c.facets[f]
            for v in (a, b):
                if v not in fv:
                    out.append(Violation("vertex-not-in-facet",
                                         f"step {i}: vertex {v} is not a vertex of facet {f}",
                                         (i, v)))
        for arc in ((a, f), (b, f)):
            if arc in arcs:
                out.append(Violation("arc-repeated", f"arc {arc} used twice", arc))
            arcs.add(arc)
    return ValidationReport(tuple(out))


# --- noncrossing ------------------------------------------------------------

def _transitions(p: FacetPath) -> dict:
    """Vertex -> list of (step index, incoming facet, outgoing facet)."""
    vs, fs = p.vertices, p.facets
    k = len(fs)
    out = {}
    for i in range(1, k):
        out.setdefault(vs[i], []).append((i, fs[i - 1], fs[i]))
    if p.cyclic and k > 1:
        out.setdefault(vs[0], []).append((0, fs[-1], fs[0]))
    return out


def _interleaved(pos: dict, t1, t2) -> bool:
    a, b = sorted((pos[t1[1]], pos[t1[2]]))
    x, y = pos[t2[1]], pos[t2[2]]
    return (a < x < b) != (a < y < b)


def crossings(c: SimplicialComplex, p: FacetPath, rotations: dict | None = None) -> list:
    """All interleaved transition pairs as ``(vertex, step_i, step_j)``.

    Boundary vertices use their linear rotation closed by a virtual position
    past the end, which leaves the chord test unchanged.
    """
    out = []
    for v, ts in sorted(_transitions(p).items()):
        if len(ts) < 2:
            continue
        rot = rotations[v] if rotations is not None else vertex_rotation(c, v)
        pos = rot.positions()
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                if _interleaved(pos, ts[i], ts[j]):
                    out.append((v, ts[i][0], ts[j][0]))
    return out


def interleaving_count(c: SimplicialComplex, p: FacetPath) -> int:
    return len(crossings(c, p))


def _rotate_open(p: FacetPath, avoid: int) -> FacetPath:
    """Rotate a cycle so that its seam vertex differs from ``avoid``."""
    for i, v in enumerate(p.vertices[:-1]):
        if v != avoid:
            return p.rotated(p.facets[i]) if i else p
    raise InvariantError("cycle visits a single vertex only")


def _first_crossing(p: FacetPath, rotations: dict):
    for v, ts in sorted(_transitions(p).items()):
        if len(ts) < 2:
            continue
        pos = rotations[v].positions()
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                if _interleaved(pos, ts[i], ts[j]):
                    return v
    return None


def make_noncrossing(c: SimplicialComplex, p: FacetPath) -> FacetPath:
    """Remove every interleaved pair of transitions at every vertex.

    For a crossing ``(..., A, v, C, ..., B, v, D, ...)`` the stretch from C to
    B is reversed, re-pairing the transitions as {A, B} and {C, D}. The walk
    stays a single trail, the other re-pairing would split off a closed loop,
    and no chord at ``v`` gains crossings, so the count strictly drops.
    """
    if c.dim != 2:
        raise ValueError("noncrossing paths are defined for surfaces (dim 2) only")
    rotations = {v: vertex_rotation(c, v) for v in set(p.vertices)}
    seen_steps = 0
    limit = 1 + sum(len(r.facets) ** 2 for r in rotations.values())
    while True:
        v = _first_crossing(p, rotations)
        if v is None:
            return p
        seen_steps += 1
        if seen_steps > limit:
            raise InvariantError("uncrossing did not terminate")
        if p.cyclic:
            p = _rotate_open(p, v)
        pos = rotations[v].positions()
        ts = [t for t in _transitions(p)[v] if t[0] != 0]
        pair = next((a, b) for i, a in enumerate(ts) for b in ts[i + 1:]
                    if _interleaved(pos, a, b))
        i, j = pair[0][0], pair[1][0]
        vs, fs = list(p.vertices), list(p.facets)
        # vertices i..j and facets i..j-1 form the stretch C..B between the two visits to v
        vs[i:j + 1] = vs[i:j + 1][::-1]
        fs[i:j] = fs[i:j][::-1]
        p = FacetPath(tuple(vs), tuple(fs))


# --- exhaustive oracle ------------------------------------------------------

DEFAULT_CAP = 9


def iter_facet_paths(c: SimplicialComplex, want_cycle: bool = False):
    """Yield facet paths (or cycles, each once up to rotation and reversal)."""
    n = c.facet_count
    facets = c.facets
    star = c.vertex_facets
    used = [False] * n
    vs, fs = [], []

    def extend(v):
        if len(fs) == n:
            if not want_cycle:
                yield FacetPath(tuple(vs), tuple(fs))
            elif v == vs[0]:
                p = FacetPath(tuple(vs), tuple(fs))
                if p == p.canonical():
                    yield p
            return
        for f in star[v]:
            if used[f]:
                continue
            used[f] = True
            fs.append(f)
            for w in facets[f]:
                if w == v:
                    continue
                vs.append(w)
                yield from extend(w)
                vs.pop()
            fs.pop()
            used[f] = False

    if want_cycle:
        # every cycle passes through facet 0; fix it as the first facet
        starts = [(0, a) for a in facets[0]] if n else []
    else:
        starts = [(f, a) for f in range(n) for a in facets[f]]
    for f, a in starts:
        used[f] = True
        vs.append(a)
        fs.append(f)
        for b in facets[f]:
            if b == a:
                continue
            vs.append(b)
            yield from extend(b)
            vs.pop()
        fs.pop()
        vs.pop()
        used[f] = False


def brute_force(c: SimplicialComplex, want_cycle: bool = False, cap: int = DEFAULT_CAP,
                limit: int | None = None) -> list:
    """Every facet path of ``c`` (or every cycle up to rotation/reflection).

    ``limit`` stops after that many results, which is enough for existence
    checks.
    """
    if c.facet_count > cap:
        raise ValueError(f"{c.facet_count} facets exceed the brute-force cap of {cap}")
    out = []
    for p in iter_facet_paths(c, want_cycle):
        out.append(p)
        if limit is not None and len(out) >= limit:
            break
    return out
