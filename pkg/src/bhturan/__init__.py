"""Verification tools for the spectral Brualdi-Hoffman-Turan problem for friendship graphs."""

from .canon import canonical_form, is_isomorphic
from .core_eta import (
    classify_components,
    eta1,
    k_core,
    proof_replay,
    verify_core_monotonicity,
)
from .detect import (
    circumference,
    clique_number,
    contains_fan,
    contains_friendship,
    is_kk2_free,
    is_triangle_free,
    max_matching,
)
from .graph import (
    Graph,
    bipartite_plus_edge,
    complete,
    complete_bipartite,
    complete_multipartite,
    cycle,
    disjoint_union,
    empty,
    extremal_candidate,
    fan,
    friendship,
    join,
    path,
    split_graph,
)
from .graph6 import from_graph6, to_graph6
from .search import (
    EnumerationSpec,
    Predicate,
    bn_conjecture_scan,
    bound_scan,
    enumerate_graphs,
    fan_conjecture_scan,
    local_search,
    spectral_max,
    turan_number,
)
from .spectral import (
    check_identity_eq2,
    check_identity_eq3,
    check_main_bound,
    check_nikiforov,
    check_nosal,
    perron,
    quotient_rho,
    top_two_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "EnumerationSpec",
    "Graph",
    "Predicate",
    "bipartite_plus_edge",
    "bn_conjecture_scan",
    "bound_scan",
    "canonical_form",
    "check_identity_eq2",
    "check_identity_eq3",
    "check_main_bound",
    "check_nikiforov",
    "check_nosal",
    "circumference",
    "classify_components",
    "clique_number",
    "complete",
    "complete_bipartite",
    "complete_multipartite",
    "contains_fan",
    "contains_friendship",
    "cycle",
    "disjoint_union",
    "empty",
    "enumerate_graphs",
    "eta1",
    "extremal_candidate",
    "fan",
    "fan_conjecture_scan",
    "friendship",
    "from_graph6",
    "is_isomorphic",
    "is_kk2_free",
    "is_triangle_free",
    "join",
    "k_core",
    "local_search",
    "max_matching",
    "path",
    "perron",
    "proof_replay",
    "quotient_rho",
    "spectral_max",
    "split_graph",
    "to_graph6",
    "top_two_eigenvalues",
    "turan_number",
    "verify_core_monotonicity",
]
