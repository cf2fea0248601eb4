"""Dependence measures, soft covers, and concentration bounds for finite
discrete distributions."""

from .alpha import (
    AlphaSeparationResult,
    alpha_dependence,
    alpha_dependence_bruteforce,
    alpha_separation,
    approximation_deviation_bound,
    separation_values_all_subsets,
)
from .bounds import (
    BoundResult,
    RangeSpec,
    bosq_bound,
    cascade_bound,
    fractional_soft_cover_bound,
    hoeffding_bound,
    janson_bound,
    lattice_bound,
    lipschitz_sup_bound,
    lower_bound_tail,
    lp_distance_bound,
    mixing_bound,
    optimize_lambda,
    soft_cover_bound,
    variance_bound,
)
from .covers import (
    DependencyGraph,
    SoftCover,
    fractional_soft_cover,
    min_soft_cover_exact,
    min_soft_cover_greedy,
    pairwise_alpha_matrix,
    thresholded_graph,
    verify_soft_cover,
)
from .dist import (
    JointDistribution,
    VariableSpec,
    bernoulli_specs,
    build_distribution,
    from_json,
    from_json_dict,
)
from .mc import (
    ComparisonReport,
    TailEstimate,
    clopper_pearson,
    compare_bounds,
    conjecture_probe,
    estimate_tail,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaSeparationResult",
    "BoundResult",
    "ComparisonReport",
    "DependencyGraph",
    "JointDistribution",
    "RangeSpec",
    "SoftCover",
    "TailEstimate",
    "VariableSpec",
    "alpha_dependence",
    "alpha_dependence_bruteforce",
    "alpha_separation",
    "approximation_deviation_bound",
    "bernoulli_specs",
    "bosq_bound",
    "build_distribution",
    "cascade_bound",
    "clopper_pearson",
    "compare_bounds",
    "conjecture_probe",
    "estimate_tail",
    "fractional_soft_cover",
    "fractional_soft_cover_bound",
    "from_json",
    "from_json_dict",
    "hoeffding_bound",
    "janson_bound",
    "lattice_bound",
    "lipschitz_sup_bound",
    "lower_bound_tail",
    "lp_distance_bound",
    "min_soft_cover_exact",
    "min_soft_cover_greedy",
    "mixing_bound",
    "optimize_lambda",
    "pairwise_alpha_matrix",
    "separation_values_all_subsets",
    "soft_cover_bound",
    "thresholded_graph",
    "variance_bound",
    "verify_soft_cover",
]
