"""
Labeled transition systems, synchronized networks and their exploration.
"""

from .dot import lts_to_dot
from .explore import (
    DEFAULT_MAX_STATES,
    ExplicitProduct,
    ReachStats,
    StateSpaceTruncated,
    format_global,
    product_explicit,
    reachable,
)
from .lts import STUTTER, Event, Lts, LtsError, Transition
from .network import GlobalState, Network, compose, enabled_events, stutter_close, successors
from .refinement import InclusionResult, trace_inclusion

__all__ = [
    "DEFAULT_MAX_STATES",
    "Event",
    "ExplicitProduct",
    "GlobalState",
    "InclusionResult",
    "Lts",
    "LtsError",
    "Network",
    "ReachStats",
    "STUTTER",
    "StateSpaceTruncated",
    "Transition",
    "compose",
    "enabled_events",
    "format_global",
    "lts_to_dot",
    "product_explicit",
    "reachable",
    "stutter_close",
    "successors",
    "trace_inclusion",
]
