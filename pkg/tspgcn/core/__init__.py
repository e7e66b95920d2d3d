from tspgcn.core.geometry import (
    AdjacencyTarget,
    Tour,
    TspInstance,
    canonical_tour,
    is_valid_tour,
    knn_indicator,
    pairwise_distances,
    tour_length,
    tour_length_from_matrix,
    tour_to_adjacency,
)

__all__ = [
    "AdjacencyTarget",
    "Tour",
    "TspInstance",
    "canonical_tour",
    "is_valid_tour",
    "knn_indicator",
    "pairwise_distances",
    "tour_length",
    "tour_length_from_matrix",
    "tour_to_adjacency",
]
