"""Trees drawn so that each part of a decomposition is the relative
neighbourhood graph — and therefore the minimum spanning tree — of its own
vertex set, with independent geometric verification."""

from .construct import (ConstructionError, Drawing, default_frame,
                        draw_deg5_partition, draw_degree5,
                        draw_outdeg3_partition, draw_outdeg4_partition,
                        draw_two_covering)
from .geometry import ConstructionFrame, Point, bits, default_precision
from .proximity import PointSet, emst, rng
from .treemodel import Decomposition, Tree, root_at, validate, validate_decomposition
from .verify import (check_general_position, check_impossible_covering,
                     check_mst_drawing, check_noncrossing, check_rng_drawing,
                     rng_stability_radius, subtree_of_part, whole_tree)

__version__ = "1.0.0"

__all__ = [
    "ConstructionError", "ConstructionFrame", "Decomposition", "Drawing",
    "Point", "PointSet", "Tree", "bits", "check_general_position",
    "check_impossible_covering", "check_mst_drawing", "check_noncrossing",
    "check_rng_drawing", "default_frame", "default_precision",
    "draw_deg5_partition", "draw_degree5", "draw_outdeg3_partition",
    "draw_outdeg4_partition", "draw_two_covering", "emst", "rng",
    "rng_stability_radius", "root_at", "subtree_of_part", "validate",
    "validate_decomposition", "whole_tree",
]
