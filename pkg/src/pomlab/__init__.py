"""pom-lab: Pareto-optimal matchings under preference lists.

Greedy (serial dictatorship) matchings, optimality verification,
avoidability certificates, reachability decision and counting, extremal
matrix generators, reduction gadgets, and the multi-matching extension.
"""

from .avoid import (
    MatchingCertificate,
    certificate_is_valid,
    is_avoidable_element,
    is_avoidable_set,
    is_exactly_reachable,
    max_bipartite_matching,
    unavoidable_elements,
)
from .count import (
    ComponentSummary,
    bound_exact_family,
    count_exactly_reachable,
    count_exactly_reachable_supersets,
    count_reachable_2col,
    count_reachable_bruteforce,
)
from .errors import BudgetExceeded, InputError, PomLabError
from .greedy import greedy_match, is_one_pom, is_pom, selects_left_closure_holds
from .model import (
    Matching,
    PreferenceMatrix,
    matrix_from_rows,
    parse_matrix,
    pad_with_fresh_columns,
    row_element_graph,
    serialize_matrix,
    truncate_to_square,
)
from .multi import DegreeList, expand, greedy_multimatch, is_avoidable_element_multi
from .reach import (
    ReachFamily,
    bound_k_pom_elements,
    bound_reachable_elements,
    decide_reachable_2col,
    enumerate_exactly_reachable,
    find_reaching_order,
    is_reachable,
    reachable_elements,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ComponentSummary",
    "DegreeList",
    "InputError",
    "Matching",
    "MatchingCertificate",
    "PomLabError",
    "PreferenceMatrix",
    "ReachFamily",
    "bound_exact_family",
    "bound_k_pom_elements",
    "bound_reachable_elements",
    "certificate_is_valid",
    "count_exactly_reachable",
    "count_exactly_reachable_supersets",
    "count_reachable_2col",
    "count_reachable_bruteforce",
    "decide_reachable_2col",
    "enumerate_exactly_reachable",
    "expand",
    "find_reaching_order",
    "greedy_match",
    "greedy_multimatch",
    "is_avoidable_element",
    "is_avoidable_element_multi",
    "is_avoidable_set",
    "is_exactly_reachable",
    "is_one_pom",
    "is_pom",
    "is_reachable",
    "matrix_from_rows",
    "max_bipartite_matching",
    "pad_with_fresh_columns",
    "parse_matrix",
    "reachable_elements",
    "row_element_graph",
    "selects_left_closure_holds",
    "serialize_matrix",
    "truncate_to_square",
    "unavoidable_elements",
]
