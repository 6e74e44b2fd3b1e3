"""Gadget graphs, exact graph invariants and choice-function extraction at desk scale."""

from .automorphisms import Permutation, automorphism_count, automorphisms, fixed_vertices, is_automorphism, orbit, orbits, preserves
from .colorings import (
    Coloring,
    UndefinedInvariantError,
    chromatic_index,
    chromatic_number,
    distinguishing_index,
    distinguishing_number,
    irreducible_coloring,
    is_distinguishing,
    is_irreducible,
    is_proper,
)
from .covers import (
    WitnessKind,
    WitnessSet,
    check,
    maximal_matching,
    minimal_dominating_set,
    minimal_edge_cover,
    minimal_vertex_cover,
    star_structure_check,
)
from .extract import ChoiceFunction, extract, product_reduction
from .fologic import deg_formula, evaluate, parse_formula, pendant_formula
from .gadgets import GadgetInstance, Kind, Role, gen_gadget, label_of
from .graph import Graph, build_graph, degree, distance, is_connected, is_independent_set, line_graph
from .shelah_soifer import QSqrt2, adjacent, parity_color, same_component, verify_parity_coloring

__version__ = "0.1.0"
