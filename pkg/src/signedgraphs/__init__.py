"""Exact spectral tools for edge-signed graphs with smallest eigenvalue above -2."""
from .classification import Label, classify, integral_representation, representation_graph
from .constructions import (
    Multigraph,
    double_edge_extension,
    enumerate_trees,
    family_x,
    l_dagger,
    line_graph,
    modified_adjacency,
    oriented_incidence,
    signed_cycle,
)
from .enumeration import enumerate_exceptional, grow_classes
from .graph import (
    SignedGraph,
    SwitchingKey,
    adjacency_matrix,
    canonical_form,
    canonical_key,
    contains_unsigned_member,
    format_esg,
    parse_esg,
    relabel,
    switch,
    switching_equivalent,
)
from .hoffman import HoffmanGraph, b_matrix, build_from_partition, special_graph
from .lines import embed_gram, generate_lines, gram_of_lines, line_compare
from .spectra import (
    Definiteness,
    IntPolynomial,
    Ordering,
    char_poly,
    compare_smallest,
    shifted_definiteness,
    smallest_eig_interval,
    verify_eigenpair,
)

__version__ = "0.1.0"
