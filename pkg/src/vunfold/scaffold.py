"""Scaffolds: every facet attached to exactly two of its vertices.

The builders peel hats and their ears off the dual tree of an unfolded
complex, emitting a short incidence cycle for each group. :func:`connect`
then merges the resulting components with flips across shared ridges.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property

from .complex_core import DualGraph, SimplicialComplex, ValidationReport, Violation, build_dual
from .dsu import DisjointSet
from .errors import CheckeredInputError, InvariantError, SingleSimplex
from .unfold_tree import UnfoldedComplex


@dataclass(frozen=True, eq=False)
class Scaffold:
    """Per facet, the sorted pair of vertices it is attached to."""

    attachments: tuple
    vertex_count: int

    @cached_property
    def degrees(self) -> tuple:
        deg = [0] * self.vertex_count
        for a, b in self.attachments:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    @property
    def facet_count(self) -> int:
        return len(self.attachments)

    @property
    def odd_vertices(self) -> tuple:
        return tuple(v for v, d in enumerate(self.degrees) if d % 2)

    @property
    def is_even(self) -> bool:
        return not self.odd_vertices

    def arcs(self) -> set:
        return {(v, f) for f, pair in enumerate(self.attachments) for v in pair}

    def component_count(self) -> int:
        return component_count(self)


def _scaffold(attachments, vertex_count: int) -> Scaffold:
    return Scaffold(tuple(tuple(sorted(p)) for p in attachments), vertex_count)


def component_count(s: Scaffold) -> int:
    """Connected components over non-isolated nodes, recounted from scratch."""
    v = s.vertex_count
    ds = DisjointSet(v + s.facet_count)
    for f, (a, b) in enumerate(s.attachments):
        ds.union(a, v + f)
        ds.union(b, v + f)
    used = {ds.find(v + f) for f in range(s.facet_count)}
    return len(used)


def check_scaffold(c: SimplicialComplex, s: Scaffold, even: bool = False) -> ValidationReport:
    """Verify scaffold invariants against ``c``."""
    out = []
    if len(s.attachments) != c.facet_count:
        out.append(Violation("facet-count",
                             f"{len(s.attachments)} attachments for {c.facet_count} facets"))
    for f, pair in enumerate(s.attachments[:c.facet_count]):
        if len(pair) != 2 or pair[0] == pair[1]:
            out.append(Violation("facet-degree", f"facet {f} attachments {pair}", (f,)))
            continue
        if not set(pair) <= set(c.facets[f]):
            out.append(Violation("foreign-vertex",
                                 f"facet {f} attached to {pair} outside {c.facets[f]}", (f,)))
    odd = s.odd_vertices
    limit = 0 if even else 2
    if len(odd) > limit:
        out.append(Violation("odd-vertices",
                             f"{len(odd)} odd-degree vertices (at most {limit} allowed)", odd))
    return ValidationReport(tuple(out))


class _Peeler:
    """Remaining part of a dual tree, with lazily maintained hat queues.

    ``mm`` holds hats with at least two ears, ``dunce`` hats with exactly one.
    Heap entries are revalidated on peek, and every facet whose status may have
    changed is pushed again (into the queue matching its new status) after a
    removal, so each queue's smallest valid entry is always the lowest-index
    facet of that kind.
    """

    def __init__(self, u: UnfoldedComplex):
        self.facets = u.complex.facets
        n = len(self.facets)
        adj = [[] for _ in range(n)]
        for a, b, ridge in u.dual.arcs:
            adj[a].append((b, ridge))
            adj[b].append((a, ridge))
        for row in adj:
            row.sort()
        self.adj = adj
        self.alive = [True] * n
        self.deg = [len(row) for row in adj]
        self.remaining = n
        self.mm = [f for f in range(n) if self._is_mm(f)]
        self.dunce = [f for f in range(n) if self._is_dunce(f)]

    def ears_of(self, f: int) -> list:
        alive, deg = self.alive, self.deg
        return [(g, r) for g, r in self.adj[f] if alive[g] and deg[g] <= 1]

    def _counts(self, f: int):
        alive, deg = self.alive, self.deg
        ears = others = 0
        for g, _ in self.adj[f]:
            if alive[g]:
                if deg[g] <= 1:
                    ears += 1
                else:
                    others += 1
        return ears, others

    def _is_mm(self, f: int) -> bool:
        if not self.alive[f]:
            return False
        ears, others = self._counts(f)
        return ears >= 2 and others <= 1

    def _is_dunce(self, f: int) -> bool:
        if not self.alive[f]:
            return False
        ears, others = self._counts(f)
        return ears == 1 and others <= 1

    @staticmethod
    def _peek(heap: list, valid) -> int | None:
        while heap:
            if valid(heap[0]):
                return heap[0]
            heapq.heappop(heap)
        return None

    def peek_mm(self):
        return self._peek(self.mm, self._is_mm)

    def peek_dunce(self):
        return self._peek(self.dunce, self._is_dunce)

    def alive_facets(self) -> list:
        return [f for f, a in enumerate(self.alive) if a]

    def remove(self, *fs: int):
        alive, deg, adj = self.alive, self.deg, self.adj
        for f in fs:
            alive[f] = False
        self.remaining -= len(fs)
        touched = set()
        for f in fs:
            for g, _ in adj[f]:
                if alive[g]:
                    deg[g] -= 1
                    touched.add(g)
        around = set(touched)
        for g in touched:
            for h, _ in adj[g]:
                if alive[h]:
                    around.add(h)
        for h in around:
            ears, others = self._counts(h)
            if others <= 1:
                if ears >= 2:
                    heapq.heappush(self.mm, h)
                elif ears == 1:
                    heapq.heappush(self.dunce, h)


def _ridge_between(peeler: _Peeler, h: int, e: int) -> tuple:
    for g, r in peeler.adj[h]:
        if g == e:
            return r
    raise InvariantError(f"facets {h} and {e} are not adjacent in the dual tree")


def _mickey_mouse_2d(peeler: _Peeler, h: int, att: list):
    (e, re), (f, rf) = peeler.ears_of(h)[:2]
    shared = set(re) & set(rf)
    if len(shared) != 1:
        raise InvariantError(f"ears {e}, {f} of hat {h} do not meet in one vertex")
    (r,) = shared
    q = re[0] if re[1] == r else re[1]
    s = rf[0] if rf[1] == r else rf[1]
    # cycle (r, E, q, H, s, F, r)
    att[e] = (r, q)
    att[h] = (q, s)
    att[f] = (s, r)
    peeler.remove(h, e, f)


def _dunce_cap(peeler: _Peeler, h: int, att: list):
    ((e, ridge),) = peeler.ears_of(h)[:1]
    p, q = ridge[0], ridge[1]
    # cycle (p, H, q, E, p)
    att[h] = (p, q)
    att[e] = (p, q)
    peeler.remove(h, e)


def _lowest_pair(facet) -> tuple:
    s = sorted(facet)
    return (s[0], s[1])


def _require_tree(u: UnfoldedComplex, d_ok):
    if not d_ok(u.dim):
        raise ValueError(f"unsupported dimension {u.dim} for this scaffold builder")
    if u.facet_count == 0:
        raise ValueError("empty complex")


def build_scaffold_2d(u: UnfoldedComplex) -> Scaffold:
    """Possibly disconnected scaffold of a triangulated polygon.

    Repeatedly takes the lowest-index hat; with two or more ears it removes the
    hat and its two lowest ears as one 6-arc cycle, otherwise the hat and its
    single ear as a 4-arc cycle. A lone leftover triangle gets a 2-arc path
    between its two lowest vertices.
    """
    _require_tree(u, lambda d: d == 2)
    peeler = _Peeler(u)
    att = [None] * u.facet_count
    while peeler.remaining:
        if peeler.remaining == 1:
            (f,) = peeler.alive_facets()
            att[f] = _lowest_pair(peeler.facets[f])
            peeler.remove(f)
            break
        mm, dunce = peeler.peek_mm(), peeler.peek_dunce()
        if mm is None and dunce is None:
            raise InvariantError("no hat found in a non-trivial dual tree")
        if dunce is None or (mm is not None and mm < dunce):
            _mickey_mouse_2d(peeler, mm, att)
        else:
            _dunce_cap(peeler, dunce, att)
    return _scaffold(att, u.complex.vertex_count)


def build_even_scaffold_2d(u: UnfoldedComplex) -> Scaffold:
    """Even scaffold of a non-checkered triangulated polygon.

    Same peeling as :func:`build_scaffold_2d`, but hats with two ears are
    always removed first. Reaching a lone triangle means the input was
    checkered and raises :class:`CheckeredInputError`.
    """
    _require_tree(u, lambda d: d == 2)
    peeler = _Peeler(u)
    att = [None] * u.facet_count
    while peeler.remaining:
        if peeler.remaining == 1:
            (f,) = peeler.alive_facets()
            raise CheckeredInputError(
                f"even-scaffold recursion left the single triangle {f}; the unfolding is checkered")
        mm = peeler.peek_mm()
        if mm is not None:
            _mickey_mouse_2d(peeler, mm, att)
            continue
        dunce = peeler.peek_dunce()
        if dunce is None:
            raise InvariantError("no hat found in a non-trivial dual tree")
        _dunce_cap(peeler, dunce, att)
    return _scaffold(att, u.complex.vertex_count)


def build_even_scaffold_d(u: UnfoldedComplex) -> Scaffold:
    """Even scaffold of an unfolded d-manifold, d >= 3.

    Cases, in priority order: three facets left (hat plus two ears) close a
    6-arc cycle; a hat with a single ear is removed with it; otherwise two ears
    of a hat are removed through two vertices they share. Choices always take
    the lowest admissible facet and vertex indices.
    """
    _require_tree(u, lambda d: d >= 3)
    if u.facet_count == 1:
        raise SingleSimplex("a single d-simplex has no even scaffold")
    facets = u.complex.facets
    peeler = _Peeler(u)
    att = [None] * u.facet_count
    while peeler.remaining:
        if peeler.remaining == 1:
            raise InvariantError("recursion left a single simplex")
        if peeler.remaining == 3:
            trio = peeler.alive_facets()
            hats = [f for f in trio if peeler.deg[f] == 2]
            if len(hats) != 1:
                raise InvariantError(f"three remaining facets {trio} are not a path")
            h = hats[0]
            e, f = sorted(x for x in trio if x != h)
            sh, se, sf = set(facets[h]), set(facets[e]), set(facets[f])
            p = min(se & sf)
            q = min((se & sh) - {p})
            r = min((sh & sf) - {p, q})
            # cycle (p, E, q, H, r, F, p)
            att[e], att[h], att[f] = (p, q), (q, r), (r, p)
            peeler.remove(h, e, f)
            continue
        dunce = peeler.peek_dunce()
        if dunce is not None:
            _dunce_cap(peeler, dunce, att)
            continue
        h = peeler.peek_mm()
        if h is None:
            raise InvariantError("no hat found in a non-trivial dual tree")
        (e, _), (f, _) = peeler.ears_of(h)[:2]
        shared = sorted(set(facets[e]) & set(facets[f]))
        if len(shared) < 2:
            raise InvariantError(f"ears {e} and {f} share fewer than two vertices")
        # cycle (p, E, q, F, p)
        att[e] = att[f] = (shared[0], shared[1])
        peeler.remove(e, f)
    return _scaffold(att, u.complex.vertex_count)


def connect(c: SimplicialComplex, s: Scaffold, dual: DualGraph | None = None,
            trace: list | None = None, check: bool = False) -> Scaffold:
    """Merge scaffold components with flips across ridges of the dual graph.

    For each dual arc (A, B) whose facets lie in different components, A's
    attachment q inside the shared ridge and B's attachment r inside it are
    exchanged. Degrees of q and r do not change and the two components merge.
    ``trace`` receives ``(A, B, q, r)`` per flip; ``check`` recounts
    components from scratch after every flip.
    """
    if dual is None:
        dual = build_dual(c)
    v = s.vertex_count
    att = [list(p) for p in s.attachments]
    ds = DisjointSet(v + len(att))
    for f, (a, b) in enumerate(att):
        ds.union(a, v + f)
        ds.union(b, v + f)
    before = component_count(s) if check else None
    flipped = False
    for a, b, ridge in dual.arcs:
        if a == b or ds.same(v + a, v + b):
            continue
        rs = set(ridge)
        qa = [x for x in att[a] if x in rs]
        rb = [x for x in att[b] if x in rs]
        if not qa or not rb:
            raise InvariantError(f"facets {a}/{b} have no attachment on their shared ridge")
        q, r = min(qa), min(rb)
        if q == r:
            raise InvariantError(f"facets {a} and {b} share attached vertex {q} across components")
        att[a][att[a].index(q)] = r
        att[b][att[b].index(r)] = q
        ds.union(v + a, v + b)
        flipped = True
        if trace is not None:
            trace.append((a, b, q, r))
        if check:
            now = component_count(_scaffold(att, v))
            if now != before - 1:
                raise InvariantError(f"flip at ({a},{b}) changed components {before} -> {now}")
            before = now
    if not flipped:
        return s
    return _scaffold(att, v)
