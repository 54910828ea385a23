"""Facet paths, facet cycles and non-overlapping strip vertex-unfoldings of
triangulated manifolds of any dimension."""

__version__ = "0.1.0"

from .complex_core import (DualGraph, IncidenceGraph, SimplicialComplex, ValidationReport,
                           Violation, VertexRotation, build_dual, incidence_graph, is_simplicial,
                           validate_pseudomanifold, vertex_rotation)
from .errors import (CheckeredInputError, CheckeredPolygon, ComplexError, DisconnectedError,
                     InvariantError, LayoutError, NoFacetCycle, NonManifoldStar,
                     NonSimplicial2Manifold, ParseError, SearchExhausted, SingleSimplex,
                     VUnfoldError)
from .facet_path import (FacetPath, brute_force, crossings, euler_trail, facet_cycle, facet_path,
                         interleaving_count, make_noncrossing, verify_path)
from .scaffold import (Scaffold, build_even_scaffold_2d, build_even_scaffold_d, build_scaffold_2d,
                       check_scaffold, component_count, connect)
from .strip_layout import (Placement, StripLayout, layout, place_facet, placement_direction,
                           verify_layout)
from .unfold_tree import (Checkering, UnfoldedComplex, UnfoldTree, checkering_of,
                          find_noncheckered_tree, spanning_tree, unfold)
