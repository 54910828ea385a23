"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class VUnfoldError(Exception):
    """Base class for every error raised by vunfold."""


class ComplexError(VUnfoldError, ValueError):
    """Input does not describe a usable simplicial complex."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ParseError(ComplexError):
    """Malformed complex file; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, path=None):
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.path = path
        self.reason = message


class NonManifoldStar(VUnfoldError):
    """The facets around a vertex do not form a single chain or cycle."""

    def __init__(self, vertex: int, message: str):
        super().__init__(f"vertex {vertex}: {message}")
        self.vertex = vertex


class DisconnectedError(VUnfoldError):
    """A graph that must be connected is not."""


class NoFacetCycle(VUnfoldError):
    """A facet cycle was requested but none is produced for this input."""

    reason = "NoFacetCycle"


class CheckeredPolygon(NoFacetCycle):
    """The complex is itself a checkered polygon triangulation."""

    reason = "CheckeredPolygon"


class SingleSimplex(NoFacetCycle):
    """A lone d-simplex with d >= 3 has no facet cycle."""

    reason = "SingleSimplex"


class NonSimplicial2Manifold(NoFacetCycle):
    """Surface whose dual graph has multi-arcs or loops; cycles are not guaranteed."""

    reason = "NonSimplicial2Manifold"


class CheckeredInputError(VUnfoldError):
    """Even-scaffold recursion met a lone triangle, so the unfolding was checkered."""


class SearchExhausted(VUnfoldError):
    """No single tree swap produced a non-checkered unfolding."""


class LayoutError(VUnfoldError):
    """A simplex cannot be placed (degenerate) or a layout cannot be rendered."""


class InvariantError(VUnfoldError):
    """An internal invariant failed; the output would not be certified."""
