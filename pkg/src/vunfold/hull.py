"""Random convex polyhedra: incremental 3D hull of points on the unit sphere."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .complex_core import SimplicialComplex

log = logging.getLogger(__name__)

PLANE_EPS = 1e-10
PERTURB_STEP = 1e-7
MAX_PERTURB = 8


@dataclass
class HullResult:
    facets: list
    used: list                       # input point indices that are hull vertices
    perturbed: list = field(default_factory=list)
    points: np.ndarray | None = None


def sphere_points(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 3))
    return x / np.linalg.norm(x, axis=1)[:, None]


def _initial_simplex(P: np.ndarray) -> list:
    n = len(P)
    i0 = 0
    i1 = next((i for i in range(1, n) if np.linalg.norm(P[i] - P[i0]) > PLANE_EPS), None)
    if i1 is None:
        raise ValueError("all points coincide")
    d01 = P[i1] - P[i0]
    i2 = next((i for i in range(n) if np.linalg.norm(np.cross(d01, P[i] - P[i0])) > PLANE_EPS), None)
    if i2 is None:
        raise ValueError("all points are collinear")
    normal = np.cross(d01, P[i2] - P[i0])
    i3 = next((i for i in range(n) if abs(normal @ (P[i] - P[i0])) > PLANE_EPS), None)
    if i3 is None:
        raise ValueError("all points are coplanar")
    return [i0, i1, i2, i3]


def convex_hull(points, seed: int = 0) -> HullResult:
    """Incremental convex hull; returns outward-oriented triangles.

    Points that land (numerically) on a current hull plane are nudged radially
    by a deterministic, seed-derived amount and retried; their indices are
    reported in ``perturbed``. Points strictly inside the hull are dropped.
    """
    P = np.array(points, dtype=float)
    n = len(P)
    if n < 4:
        raise ValueError("a 3D hull needs at least 4 points")
    rng = np.random.default_rng([seed, 0x5EED])
    init = _initial_simplex(P)
    cap = 8 * n + 16
    F = np.zeros((cap, 3), dtype=np.int64)
    N = np.zeros((cap, 3))
    off = np.zeros(cap)
    alive = np.zeros(cap, dtype=bool)
    edge_face = {}
    nf = 0

    def add_faces(tris):
        nonlocal nf
        T = np.asarray(tris, dtype=np.int64)
        k = len(T)
        A, B, C = P[T[:, 0]], P[T[:, 1]], P[T[:, 2]]
        nrm = np.cross(B - A, C - A)
        nrm /= np.linalg.norm(nrm, axis=1)[:, None]
        F[nf:nf + k] = T
        N[nf:nf + k] = nrm
        off[nf:nf + k] = np.einsum("ij,ij->i", nrm, A)
        alive[nf:nf + k] = True
        for j, (a, b, c) in enumerate(tris):
            edge_face[(a, b)] = edge_face[(b, c)] = edge_face[(c, a)] = nf + j
        nf += k

    centroid = P[init].mean(axis=0)
    a, b, c, d = init
    start = []
    for x, y, z in ((a, b, c), (a, b, d), (a, c, d), (b, c, d)):
        nrm = np.cross(P[y] - P[x], P[z] - P[x])
        start.append((x, z, y) if nrm @ (centroid - P[x]) > 0 else (x, y, z))
    add_faces(start)

    in_hull = set(init)
    perturbed = []
    for i in range(n):
        if i in in_hull:
            continue
        for attempt in range(MAX_PERTURB + 1):
            dist = N[:nf] @ P[i] - off[:nf]
            vis = alive[:nf] & (dist > PLANE_EPS)
            if vis.any():
                break
            near = alive[:nf] & (dist > -PLANE_EPS)
            if not near.any() or attempt == MAX_PERTURB:
                vis = None
                break
            P[i] *= 1.0 + PERTURB_STEP * (1.0 + rng.random())
            if not perturbed or perturbed[-1] != i:
                perturbed.append(i)
        if vis is None:
            continue
        visible = np.flatnonzero(vis)
        vlist = visible.tolist()
        vset = set(vlist)
        rows = F[visible].tolist()
        horizon = []
        for fa, fb, fc in rows:
            for e0, e1 in ((fa, fb), (fb, fc), (fc, fa)):
                if edge_face[(e1, e0)] not in vset:
                    horizon.append((e0, e1, i))
        alive[visible] = False
        for f, (fa, fb, fc) in zip(vlist, rows):
            for e in ((fa, fb), (fb, fc), (fc, fa)):
                if edge_face.get(e) == f:
                    del edge_face[e]
        if nf + len(horizon) > cap:
            grow = max(cap, len(horizon))
            F = np.vstack([F, np.zeros((grow, 3), dtype=np.int64)])
            N = np.vstack([N, np.zeros((grow, 3))])
            off = np.concatenate([off, np.zeros(grow)])
            alive = np.concatenate([alive, np.zeros(grow, dtype=bool)])
            cap += grow
        add_faces(horizon)
        in_hull.add(i)

    faces = [tuple(int(x) for x in F[f]) for f in np.flatnonzero(alive[:nf])]
    used = sorted({v for f in faces for v in f})
    return HullResult(faces, used, perturbed, P)


def gen_hull_report(n: int, seed: int = 0) -> tuple:
    """``(complex, perturbed point indices)`` for ``n`` random points on the sphere."""
    if n < 4:
        raise ValueError("gen_hull needs at least 4 points")
    res = convex_hull(sphere_points(n, seed), seed)
    if res.perturbed:
        log.warning("perturbed %d degenerate point(s): %s", len(res.perturbed), res.perturbed[:20])
    index = {v: i for i, v in enumerate(res.used)}
    facets = tuple(tuple(index[v] for v in f) for f in res.facets)
    return SimplicialComplex(2, len(res.used), facets, res.points[res.used]), res.perturbed


def gen_hull(n: int, seed: int = 0) -> SimplicialComplex:
    """Convex hull of ``n`` random points on the unit sphere, as a closed surface."""
    return gen_hull_report(n, seed)[0]
