"""Tours with certified domination ratios for {0,1}-weighted complete graphs.

The pipeline classifies an instance as regular, dense, or sparse, runs the
matching construction for that class, and reports the tour together with a
certified lower bound on its domination ratio plus optional empirical
estimates from exact enumeration or Monte Carlo sampling.
"""

from .classify import Classification, classify, corollary_thresholds, m_eps
from .dense import algorithm_b, extend_paths_to_hamilton, lemma_vertex_cover
from .dominate import (
    DominationReport,
    certified_guarantee,
    domination_exact,
    domination_mc,
    event_e_check,
    event_e_probability_exact,
    freedman_tail,
    solve,
)
from .errors import FormatError, InternalCheckError, PreconditionError
from .extend import (
    PathSystem,
    algorithm_a,
    expected_extension_weight,
    extend_matching_to_hamilton,
    join_graph,
    pick_best_join,
)
from .instance import (
    HamiltonCycle,
    Instance01,
    Weighting,
    density,
    gen_bernoulli,
    gen_hardness_reduction,
    gen_planted_clique,
    parse_instance,
    serialize_instance,
    tour_weight,
)
from .matching import (
    DoubleMatching,
    Matching,
    erdos_gallai_threshold,
    guaranteed_matching_size,
    max_double_matching,
    max_matching,
    min_weight_optimal_matching_01,
)
from .sparse import algorithm_c, dirac_hamilton_forced, low_degree_set

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "DominationReport",
    "DoubleMatching",
    "FormatError",
    "HamiltonCycle",
    "Instance01",
    "InternalCheckError",
    "Matching",
    "PathSystem",
    "PreconditionError",
    "Weighting",
    "algorithm_a",
    "algorithm_b",
    "algorithm_c",
    "certified_guarantee",
    "classify",
    "corollary_thresholds",
    "density",
    "dirac_hamilton_forced",
    "domination_exact",
    "domination_mc",
    "erdos_gallai_threshold",
    "event_e_check",
    "event_e_probability_exact",
    "expected_extension_weight",
    "extend_matching_to_hamilton",
    "extend_paths_to_hamilton",
    "freedman_tail",
    "gen_bernoulli",
    "gen_hardness_reduction",
    "gen_planted_clique",
    "guaranteed_matching_size",
    "join_graph",
    "lemma_vertex_cover",
    "low_degree_set",
    "m_eps",
    "max_double_matching",
    "max_matching",
    "min_weight_optimal_matching_01",
    "parse_instance",
    "pick_best_join",
    "serialize_instance",
    "solve",
    "tour_weight",
]
