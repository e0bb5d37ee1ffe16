"""Spanning trees of the recursive outerplanar graph family M(t)."""

from .counting import entropy, g_value, q_closed_form, q_recurrence, s_recurrence, s_theorem1
from .graph import MGraph, build, export, hub_pair
from .kirchhoff import count_separating_2forests, count_trees, count_trees_mod, det_exact, laplacian

__all__ = [
    "MGraph", "build", "export", "hub_pair",
    "s_recurrence", "g_value", "q_recurrence", "q_closed_form", "s_theorem1", "entropy",
    "laplacian", "det_exact", "count_trees", "count_separating_2forests", "count_trees_mod",
]
