"""Point-set diameter: fair-split-tree pair refinement plus baseline approximators."""

from .algorithms import ALGORITHMS
from .baselines import (bbox_diameter, brute_force_diameter, chan_diameter, direction_search_diameter,
                        grid_diameter, grid_snap, pca_diameter)
from .engine import DiameterResult, PairRefinement, RunStats, Strategy, approx_diameter, fs_directions_diameter
from .fstree import FSTree
from .generators import GenSpec, parse_gen_spec
from .pcio import ResultRecord, read_points, write_points

__all__ = [
    "ALGORITHMS", "DiameterResult", "FSTree", "GenSpec", "PairRefinement", "ResultRecord", "RunStats",
    "Strategy", "approx_diameter", "bbox_diameter", "brute_force_diameter", "chan_diameter",
    "direction_search_diameter", "fs_directions_diameter", "grid_diameter", "grid_snap",
    "parse_gen_spec", "pca_diameter", "read_points", "write_points",
]
__version__ = "0.1.0"
