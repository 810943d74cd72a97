"""Pedestrian static-trajectory analytics on walkway networks.

Build a venue graph, compute all-pairs shortest paths, measure questionnaire
routes against them, and turn route counts into per-alley flow and
attractiveness indices.
"""

__version__ = "0.1.0"

from .apsp import ShortestPathResult, apsp_distance_stats, floyd_warshall, reconstruct_path
from .errors import DataError
from .flow import (
    AlphaMatrix,
    FlowMatrix,
    accumulate_flow,
    alley_totals,
    attractiveness_index,
    attractiveness_stats,
    categorize_flows,
    relative_rents,
)
from .netmodel import Link, Node, WalkwayGraph, build_graph
from .stats import DescriptiveStats, describe, histogram
from .trajectory import (
    StaticTrajectory,
    lambda_index,
    map_match,
    parse_trajectories,
    reduce_ntxy,
    validate_trajectory,
    walking_distance,
)

__all__ = [
    "AlphaMatrix", "DataError", "DescriptiveStats", "FlowMatrix", "Link", "Node",
    "ShortestPathResult", "StaticTrajectory", "WalkwayGraph", "accumulate_flow",
    "alley_totals", "apsp_distance_stats", "attractiveness_index", "attractiveness_stats",
    "build_graph", "categorize_flows", "describe", "floyd_warshall", "histogram",
    "lambda_index", "map_match", "parse_trajectories", "reconstruct_path", "reduce_ntxy",
    "relative_rents", "validate_trajectory", "walking_distance",
]
