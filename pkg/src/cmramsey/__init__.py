"""Bipartite Ramsey numbers for connected matchings.

Closed-form values of r(k, l) and r(k, l, m), the extremal colorings behind
the lower bounds, a König-certified matching engine, and an exhaustive
search that confirms small values.
"""

from ._jit import backend
from .constructions import best_witness, build_block, build_strip
from .formula import lower_bound_generic, r2, r3, ramsey_value
from .graph import ColorMatrix, build_color_class, components
from .matching import (
    brute_force_min_cover,
    connected_matching_profile,
    max_matching,
    meets_threshold,
)
from .search import Outcome, certify_value, search_avoiding

__version__ = "0.1.0"

__all__ = [
    "ColorMatrix",
    "Outcome",
    "backend",
    "best_witness",
    "brute_force_min_cover",
    "build_block",
    "build_color_class",
    "build_strip",
    "certify_value",
    "components",
    "connected_matching_profile",
    "lower_bound_generic",
    "max_matching",
    "meets_threshold",
    "r2",
    "r3",
    "ramsey_value",
    "search_avoiding",
]
