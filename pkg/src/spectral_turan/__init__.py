"""Spectral Turan-type toolkit for C4 and star subgraphs.

Graph construction and graph6 I/O, certified leading eigenvalues of A(G)
and Q(G), exact characteristic-polynomial comparisons, isomorph-free
enumeration, and exhaustive or heuristic verification drivers.
"""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    FAMILY_KINDS,
    FamilySpec,
    Graph,
    Graph6Error,
    GraphError,
    components,
    contains_c4,
    contains_star,
    from_graph6,
    graph_from_edges,
    is_connected,
    make_family,
    max_degree,
    min_degree,
    neighborhood_partition,
    remove_isolated_vertices,
    to_graph6,
)
from .spectral import (  # noqa: E402
    SpectralResult,
    adjacency_spectral_radius,
    closed_form_spectral_radius,
    signless_laplacian_spectral_radius,
)
from .exact import Relation, compare_q_exact, compare_rho_exact, compare_rho_squared_exact  # noqa: E402
from .canon import CanonicalForm, canonical_form  # noqa: E402
from .enumerate import enumerate_graphs_by_edges, enumerate_graphs_by_vertices  # noqa: E402
from .verify import (  # noqa: E402
    TheoremSpec,
    certify_exception_families,
    check_structural_claims,
    check_w_claims,
    local_search_max_rho,
    reiman_check,
    search_conjecture,
    verify_theorem,
)
