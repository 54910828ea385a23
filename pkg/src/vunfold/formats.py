"""Readers and writers for complexes (OFF, OBJ, JSON) and layout documents."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

import numpy as np

from . import __version__
from .complex_core import SimplicialComplex, validate_pseudomanifold
from .errors import ComplexError, ParseError
from .facet_path import FacetPath
from .strip_layout import Placement, StripLayout

LAYOUT_FORMAT = "vunfold-layout"
COMPLEX_FORMAT = "vunfold-complex"


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for non-empty, comment-free lines."""
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks, col = [], 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield ln, toks


def _number(tok, ln, path, kind=float):
    col, s = tok
    try:
        return kind(s)
    except ValueError:
        raise ParseError(f"expected {'an integer' if kind is int else 'a number'}, got {s!r}",
                         ln, col, path) from None


def _finish(c: SimplicialComplex, validate: bool) -> SimplicialComplex:
    if validate:
        report = validate_pseudomanifold(c)
        if not report.ok:
            raise ComplexError("invalid complex:\n" + report.summary(), report)
    return c


def parse_off(text: str, path=None, validate: bool = True) -> SimplicialComplex:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty file", 1, 1, path)
    it = iter(lines)
    ln, toks = next(it)
    head = toks[0][1]
    if head.upper() != "OFF" and not head.upper().startswith("OFF"):
        raise ParseError(f"expected OFF header, got {head!r}", ln, toks[0][0], path)
    counts = toks[1:]
    if not counts:
        try:
            ln, counts = next(it)
        except StopIteration:
            raise ParseError("missing vertex/face counts", ln + 1, 1, path) from None
    if len(counts) < 2:
        raise ParseError("expected vertex and face counts", ln, counts[0][0] if counts else 1, path)
    nv, nf = _number(counts[0], ln, path, int), _number(counts[1], ln, path, int)
    if nv < 0 or nf < 0:
        raise ParseError("counts must be non-negative", ln, counts[0][0], path)
    coords = []
    for _ in range(nv):
        try:
            ln, toks = next(it)
        except StopIteration:
            raise ParseError(f"expected {nv} vertices, found {len(coords)}", ln + 1, 1, path) from None
        if len(toks) < 3:
            raise ParseError("vertex needs 3 coordinates", ln, toks[-1][0], path)
        coords.append([_number(t, ln, path) for t in toks[:3]])
    facets = []
    for _ in range(nf):
        try:
            ln, toks = next(it)
        except StopIteration:
            raise ParseError(f"expected {nf} faces, found {len(facets)}", ln + 1, 1, path) from None
        k = _number(toks[0], ln, path, int)
        if k != 3:
            raise ParseError(f"non-triangular face ({k} vertices)", ln, toks[0][0], path)
        if len(toks) < 4:
            raise ParseError("face lists fewer than 3 vertices", ln, toks[-1][0], path)
        face = []
        for t in toks[1:4]:
            v = _number(t, ln, path, int)
            if not 0 <= v < nv:
                raise ParseError(f"vertex index {v} out of range", ln, t[0], path)
            face.append(v)
        facets.append(tuple(face))
    extra = next(it, None)
    if extra is not None:
        raise ParseError("unexpected data after the last face", extra[0], extra[1][0][0], path)
    c = SimplicialComplex(2, nv, tuple(facets), np.array(coords, dtype=float).reshape(nv, 3))
    return _finish(c, validate)


def parse_obj(text: str, path=None, validate: bool = True) -> SimplicialComplex:
    coords, facets = [], []
    for ln, toks in _tokens(text):
        kind = toks[0][1]
        if kind == "v":
            if len(toks) < 4:
                raise ParseError("vertex needs 3 coordinates", ln, toks[-1][0], path)
            coords.append([_number(t, ln, path) for t in toks[1:4]])
        elif kind == "f":
            refs = toks[1:]
            if len(refs) != 3:
                raise ParseError(f"non-triangular face ({len(refs)} vertices)", ln, toks[0][0], path)
            face = []
            for col, ref in refs:
                head = ref.split("/", 1)[0]
                v = _number((col, head), ln, path, int)
                if v < 0:
                    v = len(coords) + v
                else:
                    v -= 1
                if not 0 <= v < len(coords):
                    raise ParseError(f"vertex reference {ref} out of range", ln, col, path)
                face.append(v)
            facets.append(tuple(face))
    c = SimplicialComplex(2, len(coords), tuple(facets),
                          np.array(coords, dtype=float).reshape(len(coords), 3))
    return _finish(c, validate)


def complex_from_dict(d: dict, path=None, validate: bool = True) -> SimplicialComplex:
    if not isinstance(d, dict):
        raise ParseError("top-level JSON value must be an object", 1, 1, path)
    for key in ("dim", "facets"):
        if key not in d:
            raise ParseError(f"missing key {key!r}", 1, 1, path)
    try:
        c = SimplicialComplex.from_facets(d["facets"], coords=d.get("coords"),
                                          labels=d.get("labels"), dim=int(d["dim"]),
                                          vertex_count=d.get("vertex_count"))
    except (TypeError, ValueError) as err:
        if isinstance(err, ComplexError):
            raise
        raise ParseError(f"malformed complex document: {err}", 1, 1, path) from None
    return _finish(c, validate)


def complex_to_dict(c: SimplicialComplex) -> dict:
    d = {"format": COMPLEX_FORMAT, "dim": c.dim, "vertex_count": c.vertex_count,
         "facets": [list(f) for f in c.facets]}
    if c.coords is not None:
        d["coords"] = c.coords.tolist()
    if c.labels is not None:
        d["labels"] = list(c.labels)
    return d


def parse_json_complex(text: str, path=None, validate: bool = True) -> SimplicialComplex:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno, path) from None
    return complex_from_dict(d, path, validate)


def read_off(path, validate: bool = True) -> SimplicialComplex:
    return parse_off(Path(path).read_text(), str(path), validate)


def read_obj(path, validate: bool = True) -> SimplicialComplex:
    return parse_obj(Path(path).read_text(), str(path), validate)


def read_json(path, validate: bool = True) -> SimplicialComplex:
    return parse_json_complex(Path(path).read_text(), str(path), validate)


READERS = {".off": read_off, ".obj": read_obj, ".json": read_json}


def read_complex(path, validate: bool = True) -> SimplicialComplex:
    """Read a complex, choosing the format from the file extension."""
    ext = os.path.splitext(str(path))[1].lower()
    if ext not in READERS:
        raise ComplexError(f"unknown complex format {ext!r} (use .off, .obj or .json)")
    return READERS[ext](path, validate)


def write_complex(c: SimplicialComplex, path) -> None:
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".json":
        text = json.dumps(complex_to_dict(c), indent=1) + "\n"
    elif ext in (".off", ".obj"):
        if c.dim != 2 or c.coords is None or c.coords.shape[1] != 3:
            raise ComplexError("OFF/OBJ output needs a surface with 3D coordinates")
        if ext == ".off":
            rows = ["OFF", f"{c.vertex_count} {c.facet_count} 0"]
            rows += [" ".join(repr(float(x)) for x in p) for p in c.coords]
            rows += ["3 " + " ".join(map(str, f)) for f in c.facets]
        else:
            rows = ["v " + " ".join(repr(float(x)) for x in p) for p in c.coords]
            rows += ["f " + " ".join(str(v + 1) for v in f) for f in c.facets]
        text = "\n".join(rows) + "\n"
    else:
        raise ComplexError(f"unknown complex format {ext!r}")
    Path(path).write_text(text)


def file_sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# --- layouts ----------------------------------------------------------------

def layout_to_dict(lay: StripLayout, provenance: dict | None = None) -> dict:
    prov = {"tool_version": __version__, "input_sha256": None, "seed": None}
    prov.update(provenance or {})
    return {
        "format": LAYOUT_FORMAT,
        "version": 1,
        "dim": lay.dim,
        "gap": lay.gap,
        "total_width": lay.total_width,
        "path": lay.path.to_dict(),
        "placements": [
            {"facet": q.facet, "vertices": list(q.vertices), "entry": q.entry, "exit": q.exit,
             "interval": [q.interval[0], q.interval[1]],
             "coords": [[float(x) for x in row] for row in q.coords]}
            for q in lay.placements],
        "provenance": prov,
    }


def layout_from_dict(d: dict) -> StripLayout:
    if d.get("format") != LAYOUT_FORMAT:
        raise ParseError(f"not a {LAYOUT_FORMAT} document", 1, 1)
    placements = []
    for q in d["placements"]:
        coords = np.array(q["coords"], dtype=float)
        coords.flags.writeable = False
        placements.append(Placement(int(q["facet"]), tuple(q["vertices"]), coords,
                                    int(q["entry"]), int(q["exit"]),
                                    (float(q["interval"][0]), float(q["interval"][1]))))
    return StripLayout(int(d["dim"]), FacetPath.from_dict(d["path"]), tuple(placements),
                       float(d["gap"]))


def write_layout_json(lay: StripLayout, path, provenance: dict | None = None) -> None:
    Path(path).write_text(json.dumps(layout_to_dict(lay, provenance), indent=1) + "\n")


def read_layout_json(path) -> StripLayout:
    text = Path(path).read_text()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno, str(path)) from None
    return layout_from_dict(d)


def path_to_json(p: FacetPath, provenance: dict | None = None) -> str:
    d = {"format": "vunfold-path", "path": p.to_dict(),
         "provenance": {"tool_version": __version__, **(provenance or {})}}
    return json.dumps(d, indent=1) + "\n"
