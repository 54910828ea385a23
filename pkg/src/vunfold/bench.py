"""Runtime of the path + layout pipeline on random hulls of growing size."""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .complex_core import SimplicialComplex
from .facet_path import facet_path, verify_path
from .hull import gen_hull
from .strip_layout import layout

DEFAULT_SIZES = (1000, 2000, 4000, 8000)


@dataclass(frozen=True)
class BenchRow:
    target: int          # requested facet count
    facets: int          # facets actually produced by the hull
    seconds: float       # median of the repeats
    ratio: float | None  # seconds / previous row's seconds


def _fresh(c: SimplicialComplex) -> SimplicialComplex:
    # a new instance drops the cached ridge map and dual
    return SimplicialComplex(c.dim, c.vertex_count, c.facets, c.coords, c.labels)


def _timed_once(c: SimplicialComplex) -> float:
    fresh = _fresh(c)
    # like timeit: no collector pauses inside the measured call
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        t0 = time.perf_counter()
        layout(fresh, facet_path(fresh))
        return time.perf_counter() - t0
    finally:
        if enabled:
            gc.enable()


def time_pipeline(c: SimplicialComplex, repeat: int = 3) -> float:
    return statistics.median(_timed_once(c) for _ in range(repeat))


def run_bench(sizes=DEFAULT_SIZES, seed: int = 0, repeat: int = 11, check: bool = True) -> list:
    """Median time of facet_path + layout per size over ``repeat`` runs.

    Hulls use ``facets/2 + 2`` points. Repeats are interleaved across sizes so
    every size sees the same mix of machine states. The median is used rather
    than the minimum: short fast bursts can contain a whole small run but not a
    large one, which biases best-of timings toward superlinear ratios.
    """
    meshes = [gen_hull(target // 2 + 2, seed) for target in sizes]
    if check:
        for c in meshes:
            if not verify_path(c, facet_path(_fresh(c))).ok:
                raise AssertionError(f"invalid path on the {c.facet_count}-facet hull")
    samples = [[] for _ in meshes]
    for _ in range(repeat):
        for i, c in enumerate(meshes):
            samples[i].append(_timed_once(c))
    rows, prev = [], None
    for target, c, ts in zip(sizes, meshes, samples):
        t = statistics.median(ts)
        rows.append(BenchRow(target, c.facet_count, t, None if prev is None else t / prev))
        prev = t
    return rows


def format_table(rows) -> str:
    lines = [f"{'facets':>8} {'seconds':>10} {'ratio':>7}"]
    for r in rows:
        ratio = "-" if r.ratio is None else f"{r.ratio:.2f}"
        lines.append(f"{r.facets:>8} {r.seconds:>10.4f} {ratio:>7}")
    return "\n".join(lines)


def write_csv(rows, path) -> None:
    delim = "\t" if str(path).endswith(".tsv") else ","
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter=delim, lineterminator="\n")
        w.writerow(["target", "facets", "seconds", "ratio"])
        for r in rows:
            w.writerow([r.target, r.facets, f"{r.seconds:.6f}",
                        "" if r.ratio is None else f"{r.ratio:.4f}"])


def plot(rows, path) -> None:
    """Log-log runtime plot with a slope-1 reference line."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    n = [r.facets for r in rows]
    t = [r.seconds for r in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.6), constrained_layout=True)
    ax.loglog(n, t, "o-", color="#1f4e79", label="path + layout")
    ref = [t[0] * k / n[0] for k in n]
    ax.loglog(n, ref, "--", color="#9a9a9a", label="linear reference")
    ax.set_xlabel("facets")
    ax.set_ylabel("seconds (median of repeats)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(frameon=False)
    fig.savefig(Path(path), dpi=120, metadata={"Software": None})
    plt.close(fig)
