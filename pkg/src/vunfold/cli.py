"""Command-line interface: ``vunfold check|path|cycle|unfold|gen|bench``.

Exit codes: 0 ok, 2 invalid input, 3 no facet cycle where one was demanded,
4 internal invariant or certification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .complex_core import SimplicialComplex, build_dual, is_simplicial, validate_pseudomanifold
from .errors import (ComplexError, InvariantError, LayoutError, NoFacetCycle, NonManifoldStar,
                     VUnfoldError)
from .facet_path import FacetPath, facet_cycle, facet_path, make_noncrossing, verify_path
from .formats import file_sha256, path_to_json, read_complex, write_complex, write_layout_json
from .strip_layout import layout, verify_layout
from .svg import SvgOptions, render_svg
from .unfold_tree import checkering_of, spanning_tree, unfold

EXIT_OK, EXIT_INPUT, EXIT_NO_CYCLE, EXIT_INTERNAL = 0, 2, 3, 4
CERT_TOL = 1e-9


class _Style:
    def __init__(self, stream):
        self.on = stream.isatty() and "NO_COLOR" not in os.environ

    def __call__(self, text: str, code: str) -> str:
        return f"\033[{code}m{text}\033[0m" if self.on else text


def _err(msg: str, tag: str = "error") -> None:
    style = _Style(sys.stderr)
    print(f"{style(tag, '31;1')}: {msg}", file=sys.stderr)


def _format_path(p: FacetPath, c: SimplicialComplex) -> str:
    name = (lambda v: str(c.labels[v])) if c.labels is not None else str
    parts = [name(p.vertices[0])]
    for f, v in zip(p.facets, p.vertices[1:]):
        parts += [f"[{f}]", name(v)]
    return " ".join(parts)


def _certified_path(c: SimplicialComplex, p: FacetPath) -> FacetPath:
    report = verify_path(c, p)
    if not report.ok:
        raise InvariantError("path failed verification:\n" + report.summary())
    return p


def _build_path(c: SimplicialComplex, args) -> FacetPath:
    if getattr(args, "cycle", False):
        p = facet_cycle(c, start_facet=getattr(args, "start_facet", None))
    else:
        p = facet_path(c)
    if getattr(args, "noncrossing", False):
        p = make_noncrossing(c, p)
    return _certified_path(c, p)


def _provenance(args) -> dict:
    return {"input_sha256": file_sha256(args.file), "seed": None,
            "input": Path(args.file).name, "command": args.command}


# --- subcommands ------------------------------------------------------------

def cmd_check(args) -> int:
    c = read_complex(args.file, validate=False)
    report = validate_pseudomanifold(c)
    style = _Style(sys.stdout)
    print(f"dim {c.dim}, {c.vertex_count} vertices, {c.facet_count} facets")
    if not report.ok:
        print(style("INVALID", "31;1"))
        print(report.summary())
        return EXIT_INPUT
    dual = build_dual(c)
    simple = is_simplicial(dual)
    print(style("valid pseudo-manifold", "32"))
    print(f"interior ridges {len(dual.arcs)}, boundary ridges {len(dual.boundary)}")
    print(f"simplicial (simple dual graph): {'yes' if simple else 'no'}")
    if c.dim == 2:
        print(f"polygon triangulation (dual is a tree): {'yes' if dual.is_tree() else 'no'}")
        chk = checkering_of(unfold(c, spanning_tree(dual)))
        if chk is None:
            print("breadth-first unfolding checkered: no")
        else:
            print(f"breadth-first unfolding checkered: yes ({len(chk.white_facets)} white)")
    return EXIT_OK


def cmd_path(args) -> int:
    c = read_complex(args.file)
    p = _build_path(c, args)
    print(_format_path(p, c))
    if args.json:
        Path(args.json).write_text(path_to_json(p, _provenance(args)))
    return EXIT_OK


def cmd_cycle(args) -> int:
    c = read_complex(args.file)
    args.cycle = True
    p = _build_path(c, args)
    print(_format_path(p, c))
    if args.json:
        Path(args.json).write_text(path_to_json(p, _provenance(args)))
    return EXIT_OK


def cmd_unfold(args) -> int:
    c = read_complex(args.file)
    if args.svg and c.dim != 2:
        raise LayoutError(f"SVG output needs a surface, this complex has dimension {c.dim}")
    p = _build_path(c, args)
    lay = layout(c, p, gap=args.gap)
    report = verify_layout(lay, c, tol=CERT_TOL)
    if not report.ok:
        raise InvariantError("layout failed certification:\n" + report.summary())
    if args.svg:
        opts = SvgOptions(show_strips=args.strips, labels=args.labels,
                          count_label=args.count_label, fill_by_parity=not args.plain)
        Path(args.svg).write_text(render_svg(lay, opts, c.labels))
    if args.json:
        write_layout_json(lay, args.json, _provenance(args))
    kind = "cycle" if p.cyclic else "path"
    print(f"{c.facet_count} facets, facet {kind}, total width {lay.total_width:.9g}")
    return EXIT_OK


def cmd_gen(args) -> int:
    from .hull import gen_hull_report

    if args.points < 4:
        raise ComplexError("--points must be at least 4")
    c, perturbed = gen_hull_report(args.points, args.seed)
    write_complex(c, args.out)
    print(f"{c.vertex_count} vertices, {c.facet_count} facets -> {args.out}")
    if perturbed:
        print(f"perturbed {len(perturbed)} degenerate point(s)")
    return EXIT_OK


def cmd_bench(args) -> int:
    from . import bench

    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise ComplexError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    if not sizes or min(sizes) < 4:
        raise ComplexError("--sizes needs facet counts of at least 4")
    rows = bench.run_bench(sizes, seed=args.seed, repeat=args.repeat)
    print(bench.format_table(rows))
    if args.csv:
        bench.write_csv(rows, args.csv)
    if args.plot:
        bench.plot(rows, args.plot)
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vunfold",
                                 description="Facet paths and strip vertex-unfoldings.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a complex and print diagnostics")
    p.add_argument("file", help=".off, .obj or .json complex")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("path", help="compute a facet path")
    p.add_argument("file", help=".off, .obj or .json complex")
    p.add_argument("--noncrossing", action="store_true", help="remove crossings at vertices")
    p.add_argument("--json", metavar="OUT", help="also write the path as JSON")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("cycle", help="compute a facet cycle (exit 3 if none)")
    p.add_argument("file", help=".off, .obj or .json complex")
    p.add_argument("--start-facet", type=int, metavar="K", help="rotate the cycle to start at K")
    p.add_argument("--noncrossing", action="store_true", help="remove crossings at vertices")
    p.add_argument("--json", metavar="OUT", help="also write the cycle as JSON")
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("unfold", help="lay out a facet path as non-overlapping strips")
    p.add_argument("file", help=".off, .obj or .json complex")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--cycle", action="store_true", default=False,
                      help="lay out a facet cycle (exit 3 if none)")
    mode.add_argument("--path", dest="cycle", action="store_false", default=False,
                      help="lay out a facet path (default)")
    p.add_argument("--start-facet", type=int, metavar="K", help="with --cycle, start at K")
    p.add_argument("--gap", type=float, default=0.0, help="space between strips (default 0)")
    p.add_argument("--noncrossing", action="store_true", help="remove crossings at vertices")
    p.add_argument("--svg", metavar="OUT", help="write an SVG drawing (surfaces only)")
    p.add_argument("--json", metavar="OUT", help="write the certified layout as JSON")
    p.add_argument("--strips", action="store_true", help="draw strip guide lines")
    p.add_argument("--labels", action="store_true", help="label vertices")
    p.add_argument("--count-label", action="store_true", help="print the facet count on the left")
    p.add_argument("--plain", action="store_true", help="single fill colour")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("gen", help="random convex polyhedron (hull of sphere points)")
    p.add_argument("--points", type=int, required=True, help="number of sphere points (>= 4)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--out", required=True, help=".off, .obj or .json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="runtime table for path + layout on random hulls")
    p.add_argument("--sizes", default="1000,2000,4000,8000", help="comma-separated facet counts")
    p.add_argument("--seed", type=int, default=0, help="hull seed (default 0)")
    p.add_argument("--repeat", type=int, default=11,
                   help="interleaved runs per size; the median is reported (default 11)")
    p.add_argument("--csv", metavar="OUT", help="write the table (.tsv for tabs)")
    p.add_argument("--plot", metavar="OUT", help="write a PNG runtime plot")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NoFacetCycle as err:
        _err(f"{err.reason}: {err}", "no facet cycle")
        return EXIT_NO_CYCLE
    except InvariantError as err:
        _err(str(err), "internal error")
        return EXIT_INTERNAL
    except (ComplexError, NonManifoldStar, LayoutError, OSError) as err:
        _err(str(err))
        return EXIT_INPUT
    except VUnfoldError as err:
        _err(f"{type(err).__name__}: {err}", "internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
