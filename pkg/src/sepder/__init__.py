"""Generating sets for modules of logarithmic derivations of graphic arrangements."""

__version__ = "0.1.0"

from .derivations import (
    Derivation,
    SaitoResult,
    coefficient_matrix,
    defining_polynomial,
    is_member,
    phi,
    saito_check,
    sigma_neighbourhood,
    theta_power,
    theta_sep,
    theta_sep_poly,
)
from .errors import (
    DisconnectedGraphError,
    IncompletePosetError,
    LoopEdgeError,
    MalformedLineError,
    NotAMemberError,
    ParseError,
    SepderError,
    VertexRangeError,
)
from .genset import (
    GenSetReport,
    assemble_generators,
    bounds_report,
    certify,
    degree_sequence,
    generating_set,
    prune_to_minimal,
    subsequence_check,
    tree_basis,
)
from .graph import (
    Graph,
    Separator,
    clique_number,
    connectivity,
    is_chordal,
    minimal_separators,
    parse_graph,
    render_edge_list,
    t_max,
    t_min,
    to_graph6,
)
from .oracle import (
    GradedBasis,
    find_redundant,
    graded_basis,
    minimal_degree_sequence,
    minimal_generators,
    module_dimension,
    span_dimension,
    verify_generation,
)
from .poly import MultiPoly, UniPolyOverS, parse_poly
from .poset import (
    SeparatorNode,
    SeparatorPoset,
    build_poset,
    complement_rule,
    descending_chain,
    generation_rule,
    heuristic_minimal_poset,
    is_complete,
)
