"""Triangle presentations over generalized quadrangles: validation, complexes, symmetry, search."""

from .incidence import (LabeledGraph, Vertex, bipartite_classes, build_doily, diameter, girth,
                        is_generalized_m_gon)
from .presentation import (T1, T2, PolygonalPresentation, cyclic_closure, derive_basic_bijection,
                           parse_presentation, reconstruct_link_graph, validate_presentation)
from .complex import build_polyhedron, cell_census, check_link_condition, vertex_links
from .symmetry import (canonical_form, enumerate_automorphisms, find_isomorphism,
                       presentations_equivalent)
from .grouppres import abelianization, relation_matrix, smith_normal_form, to_group_presentation
from .develop import ball_census, develop_ball, interior_link_check
from .search import build_arc_digraph, dedupe_up_to_equivalence, enumerate_triangle_presentations

__version__ = "0.1.0"

__all__ = [
    "LabeledGraph", "Vertex", "bipartite_classes", "build_doily", "diameter", "girth",
    "is_generalized_m_gon", "T1", "T2", "PolygonalPresentation", "cyclic_closure",
    "derive_basic_bijection", "parse_presentation", "reconstruct_link_graph",
    "validate_presentation", "build_polyhedron", "cell_census", "check_link_condition",
    "vertex_links", "canonical_form", "enumerate_automorphisms", "find_isomorphism",
    "presentations_equivalent", "abelianization", "relation_matrix", "smith_normal_form",
    "to_group_presentation", "ball_census", "develop_ball", "interior_link_check",
    "build_arc_digraph", "dedupe_up_to_equivalence", "enumerate_triangle_presentations",
]
