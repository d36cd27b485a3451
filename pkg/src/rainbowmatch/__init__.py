"""Rainbow matchings in edge-colored graphs under total color degree conditions."""

from .core import (
    EdgeColoredGraph,
    GraphError,
    Matching,
    color_degree,
    color_degree_restricted,
    is_c4_free,
    is_properly_colored,
    is_rainbow_matching,
    is_star_forest,
    is_triangle_free,
    reduce_to_star_forests,
    total_color_degree,
)
from .exact import enumerate_rainbow_matchings, has_rainbow_matching, max_rainbow_matching
from .greedy import peel_general, peel_proper, reconstruct, step_weights
from .instance import emit_instance, parse_instance
from .verify import TheoremId, check_hypotheses, verify_theorem

__version__ = '0.1.0'
