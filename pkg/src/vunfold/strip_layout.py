"""Strip (d = 2) and slab (d >= 3) vertex-unfolding of a facet path.

Every facet is placed rigidly so that its entry vertex is the unique minimum
and its exit vertex the unique maximum of the first coordinate. Facets then
occupy consecutive slabs ``x_left <= x <= x_right`` that share nothing but
the path vertex between them, so non-overlap holds by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .complex_core import SimplicialComplex, ValidationReport, Violation
from .errors import LayoutError
from .facet_path import FacetPath

# residual norm (relative to the facet's size) under which a vertex offset adds no new frame axis
FRAME_RTOL = 1e-12
INTERIOR_TARGET = 0.5


@dataclass(frozen=True, eq=False)
class Placement:
    facet: int
    vertices: tuple          # global vertex ids, in facet order
    coords: np.ndarray       # (d+1, d) placed coordinates, rows follow ``vertices``
    entry: int
    exit: int
    interval: tuple          # (x_left, x_right)

    @property
    def width(self) -> float:
        return self.interval[1] - self.interval[0]


@dataclass(frozen=True, eq=False)
class StripLayout:
    dim: int
    path: FacetPath
    placements: tuple
    gap: float = 0.0

    @property
    def total_width(self) -> float:
        if not self.placements:
            return 0.0
        return self.placements[-1].interval[1] - self.placements[0].interval[0]

    def __len__(self):
        return len(self.placements)

    def __eq__(self, other):
        if not isinstance(other, StripLayout):
            return NotImplemented
        if (self.dim, self.path, self.gap, len(self)) != (other.dim, other.path, other.gap, len(other)):
            return False
        for a, b in zip(self.placements, other.placements):
            if (a.facet, a.vertices, a.entry, a.exit, a.interval) != \
                    (b.facet, b.vertices, b.entry, b.exit, b.interval):
                return False
            if not np.array_equal(a.coords, b.coords):
                return False
        return True


@lru_cache(maxsize=None)
def regular_simplex(d: int) -> np.ndarray:
    """Unit-edge regular d-simplex in R^d, ``(d+1, d)``."""
    pts = np.eye(d + 1) / math.sqrt(2.0)
    pts -= pts.mean(axis=0)
    # orthonormal basis of the hyperplane sum(x) = 0
    q, _ = np.linalg.qr(pts[:d].T)
    out = pts @ q
    out.flags.writeable = False
    return out


def _as_batch(simplices, entry, exit):
    P = np.asarray(simplices, dtype=float)
    if P.ndim == 2:
        P = P[None]
    k, n, m = P.shape
    d = n - 1
    if m < d:
        raise LayoutError(f"{n} points in R^{m} cannot span a {d}-simplex")
    entry = np.broadcast_to(np.asarray(entry, dtype=int), (k,))
    exit = np.broadcast_to(np.asarray(exit, dtype=int), (k,))
    if np.any(entry == exit):
        raise LayoutError("entry and exit vertex must differ")
    if np.any((entry < 0) | (entry > d) | (exit < 0) | (exit > d)):
        raise LayoutError("entry/exit index outside the simplex")
    return P, entry, exit


def _frames(P, entry, exit):
    """Direction vectors, orthonormal frames and entry-relative offsets for a batch."""
    k, n, m = P.shape
    d = n - 1
    rows = np.arange(k)
    offsets = P - P[rows, entry][:, None, :]
    # the d vertices other than entry, in index order
    others = np.array([[j for j in range(n) if j != e] for e in range(n)])[entry]
    E = offsets[rows[:, None], others]                       # (k, d, m)
    target = np.full((k, d), INTERIOR_TARGET)
    target[others == exit[:, None]] = 1.0
    gram = E @ np.swapaxes(E, 1, 2)
    try:
        alpha = np.linalg.solve(gram, target[..., None])[..., 0]
    except np.linalg.LinAlgError as err:
        raise LayoutError("degenerate simplex") from err
    w = np.einsum("kd,kdm->km", alpha, E)
    wn = np.linalg.norm(w, axis=1)
    scale = np.linalg.norm(E, axis=2).max(axis=1)
    if np.any(~np.isfinite(wn)) or np.any(wn * scale <= FRAME_RTOL):
        raise LayoutError("degenerate simplex")
    u = w / wn[:, None]

    # frame: u first, then Gram-Schmidt over non-path vertices (index order), then exit
    order = np.array([[j for j in range(n) if j not in (e, x)] + [x]
                      for e, x in zip(entry.tolist(), exit.tolist())])
    frame = np.zeros((k, d, m))
    frame[:, 0] = u
    filled = np.ones(k, dtype=int)
    for j in range(order.shape[1]):
        r = offsets[rows, order[:, j]].copy()
        for _ in range(2):
            r -= np.einsum("kd,kdm->km", np.einsum("km,kdm->kd", r, frame), frame)
        rn = np.linalg.norm(r, axis=1)
        take = (rn > FRAME_RTOL * scale) & (filled < d)
        if np.any(take):
            idx = rows[take]
            frame[idx, filled[take]] = r[take] / rn[take, None]
            filled[take] += 1
    if np.any(filled < d):
        raise LayoutError("degenerate simplex")
    return u, frame, offsets


def placement_direction(simplex, entry: int, exit: int) -> np.ndarray:
    """Unit direction along which ``entry`` is lowest and ``exit`` highest.

    It is the normalised gradient, within the simplex's affine hull, of the
    affine function equal to 0 at ``entry``, 1 at ``exit`` and 1/2 at every
    other vertex. ``entry`` and ``exit`` index rows of ``simplex``.
    """
    P, e, x = _as_batch(simplex, entry, exit)
    u, _, _ = _frames(P, e, x)
    return u[0]


def _place_batch(P, entry, exit):
    _, frame, offsets = _frames(P, entry, exit)
    return np.einsum("knm,kdm->knd", offsets, frame)


def place_facet(simplex, entry: int, exit: int, anchor=None) -> np.ndarray:
    """Rigid copy of ``simplex`` in R^d with the entry vertex at ``anchor``.

    The placement direction maps to +x. In the plane the remaining vertex ends
    up above the entry vertex; in general the other axes come from
    Gram-Schmidt over the non-path vertex offsets in index order, then the
    exit offset.
    """
    P, e, x = _as_batch(simplex, entry, exit)
    rel = _place_batch(P, e, x)[0]
    d = rel.shape[1]
    anchor = np.zeros(d) if anchor is None else np.asarray(anchor, dtype=float)
    return rel + anchor


def _source_simplices(c: SimplicialComplex, facets) -> np.ndarray:
    if c.coords is None:
        return np.broadcast_to(regular_simplex(c.dim), (len(facets), c.dim + 1, c.dim))
    return c.coords[np.asarray([c.facets[f] for f in facets], dtype=int)]


def layout(c: SimplicialComplex, p: FacetPath, gap: float = 0.0) -> StripLayout:
    """Sweep the path left to right, one strip per facet.

    Facet i is anchored at facet i-1's placed exit point shifted by ``gap``
    along x. Cycles are laid out open. Complexes without coordinates use a
    unit regular simplex for every facet.
    """
    gap = float(gap)
    if gap < 0 or not math.isfinite(gap):
        raise LayoutError(f"gap must be a finite non-negative number, got {gap}")
    if not p.facets:
        raise LayoutError("empty path")
    facets = list(p.facets)
    local = [(c.facets[f].index(a), c.facets[f].index(b)) for a, f, b in p.steps()]
    entry = np.array([e for e, _ in local])
    exit = np.array([x for _, x in local])
    P = _source_simplices(c, facets)
    rel = _place_batch(P, entry, exit)
    k = len(facets)
    rows = np.arange(k)
    exit_rel = rel[rows, exit]
    anchors = np.empty((k, c.dim))
    x_right = np.empty(k)
    cur = np.zeros(c.dim)
    for i in range(k):
        anchors[i] = cur
        x_right[i] = cur[0] + exit_rel[i, 0]
        cur = cur + exit_rel[i]
        cur[0] = x_right[i] + gap
    placed = rel + anchors[:, None, :]
    placements = []
    for i, f in enumerate(facets):
        placed[i, exit[i], 0] = x_right[i]
        coords = placed[i]
        coords.flags.writeable = False
        placements.append(Placement(f, c.facets[f], coords, p.vertices[i], p.vertices[i + 1],
                                    (float(anchors[i, 0]), float(x_right[i]))))
    return StripLayout(c.dim, p, tuple(placements), gap)


def _pairwise(X):
    diff = X[..., :, None, :] - X[..., None, :, :]
    return np.sqrt((diff ** 2).sum(-1))


def verify_layout(lay: StripLayout, c: SimplicialComplex, tol: float = 1e-9) -> ValidationReport:
    """Certify strip disjointness, vertex containment, congruence and contact.

    Strip order is checked exactly (no tolerance); ``tol`` is relative and
    applies to boundary positions, the gap value and pairwise distances.
    """
    out = []
    pl = lay.placements
    if len(pl) != len(lay.path.facets):
        out.append(Violation("placement-count", "placements do not match the path"))
        return ValidationReport(tuple(out))
    for i in range(len(pl) - 1):
        r, l2 = pl[i].interval[1], pl[i + 1].interval[0]
        if not l2 >= r:
            out.append(Violation("strip-overlap",
                                 f"strips {i} and {i + 1} overlap ({r} > {l2})", (i, i + 1)))
        elif abs((l2 - r) - lay.gap) > tol * max(1.0, abs(r)):
            out.append(Violation("strip-gap",
                                 f"strips {i} and {i + 1} are {l2 - r} apart, gap is {lay.gap}",
                                 (i, i + 1)))
    for i, q in enumerate(pl):
        xl, xr = q.interval
        if not xr > xl:
            out.append(Violation("strip-empty", f"strip {i} has non-positive width", (i,)))
        slack = tol * max(1.0, abs(xl), abs(xr))
        for j, v in enumerate(q.vertices):
            x = q.coords[j, 0]
            if v == q.entry:
                ok = abs(x - xl) <= slack
            elif v == q.exit:
                ok = abs(x - xr) <= slack
            else:
                ok = xl < x < xr
            if not ok:
                out.append(Violation("vertex-outside-strip",
                                     f"strip {i}: vertex {v} at x={x!r} not placed correctly in "
                                     f"[{xl!r}, {xr!r}]", (i, v)))
    if pl:
        placed = np.stack([q.coords for q in pl])
        src = _source_simplices(c, [q.facet for q in pl])
        if c.coords is not None:
            src = c.coords[np.asarray([q.vertices for q in pl], dtype=int)]
        d_src = _pairwise(src)
        d_pl = _pairwise(placed)
        iu = np.triu_indices(d_src.shape[1], 1)
        a, b = d_src[:, iu[0], iu[1]], d_pl[:, iu[0], iu[1]]
        err = np.abs(a - b) / np.maximum(a, np.finfo(float).tiny)
        for i in np.flatnonzero(err.max(axis=1) > tol):
            out.append(Violation("not-congruent",
                                 f"strip {i}: relative distance error {err[i].max():.3g}", (int(i),)))
    if lay.gap == 0:
        for i in range(len(pl) - 1):
            a, b = pl[i], pl[i + 1]
            pa = a.coords[a.vertices.index(a.exit)]
            pb = b.coords[b.vertices.index(b.entry)]
            scale = max(1.0, float(np.abs(pa).max()))
            if a.exit != b.entry or np.abs(pa - pb).max() > tol * scale:
                out.append(Violation("contact-mismatch",
                                     f"strips {i} and {i + 1} do not share vertex {a.exit}",
                                     (i, i + 1)))
    for i, q in enumerate(pl):
        if q.facet != lay.path.facets[i]:
            out.append(Violation("path-mismatch", f"strip {i} holds facet {q.facet}", (i,)))
    return ValidationReport(tuple(out))
