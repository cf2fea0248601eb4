"""Constructors for the concrete dependent-variable models.

Each generator returns an exact :class:`~depbounds.dist.JointDistribution`
at desk scale, with seeded samplers alongside for sizes beyond the
enumeration caps.
"""

from .blocks import distance_partition, interleaved_blocks
from .cascade import Graph, cascade_exact, cascade_sample, chain_graph, min_pairwise_distance, star_graph
from .ising import LatticeSpec, ising_exact, ising_gibbs_sample, moment_difference
from .lowerbound import exact_tail_lower_model, lower_bound_distribution
from .markov import (
    MarkovSpec,
    markov_process,
    markov_sample_means,
    stationary_distribution,
    window_alpha,
)

__all__ = [
    "Graph",
    "LatticeSpec",
    "MarkovSpec",
    "cascade_exact",
    "cascade_sample",
    "chain_graph",
    "distance_partition",
    "exact_tail_lower_model",
    "interleaved_blocks",
    "ising_exact",
    "ising_gibbs_sample",
    "lower_bound_distribution",
    "markov_process",
    "markov_sample_means",
    "min_pairwise_distance",
    "moment_difference",
    "stationary_distribution",
    "star_graph",
    "window_alpha",
]
