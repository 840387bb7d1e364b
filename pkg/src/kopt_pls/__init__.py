"""Tight reduction from Max-Cut/Flip to TSP/k-Opt, with exhaustive checkers."""

from .correspondence import (
    NonStandard,
    StandardTourWitness,
    classify_tour,
    cut_to_tour,
    standard_transition_graph,
    tour_to_cut,
    x_change,
)
from .maxcut import Cut, MaxCutInstance, cut_value, flip, flip_local_search, maxcut_transition_graph
from .reduction import (
    Orientation,
    ReductionArtifact,
    build_reduction,
    complete_instance,
    metricize,
    min_feasible_k,
    nonedge_weight,
    partial_edge_orientation,
)
from .tsp import SwapMove, Tour, TspInstance, enumerate_improving_k_swaps, k_opt_local_search, tour_weight

__all__ = [
    "Cut", "MaxCutInstance", "NonStandard", "Orientation", "ReductionArtifact", "StandardTourWitness",
    "SwapMove", "Tour", "TspInstance", "build_reduction", "classify_tour", "complete_instance",
    "cut_to_tour", "cut_value", "enumerate_improving_k_swaps", "flip", "flip_local_search",
    "k_opt_local_search", "maxcut_transition_graph", "metricize", "min_feasible_k", "nonedge_weight",
    "partial_edge_orientation", "standard_transition_graph", "tour_to_cut", "tour_weight", "x_change",
]
