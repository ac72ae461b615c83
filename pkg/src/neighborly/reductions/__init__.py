"""Constructive reductions, each paired with a search-free witness function."""

from .coloring import (
    CaiMeyerGraph,
    cai_meyer_graph,
    coloring_from_assignment,
    g_opt,
    g_opt_vertex,
    g_transform,
    join_lift,
)
from .cover import (
    VcReduction,
    f_triangle_opt,
    f_vc_reduction,
    theta_gadget,
    vc_reduction,
    vc_triangle_opt,
)
from .sat import (
    ClauseKind,
    PwOutput,
    f_clause_trace,
    f_transform,
    pw_transform,
    pw_witness,
    sat_witness,
)

__all__ = [
    "CaiMeyerGraph",
    "ClauseKind",
    "PwOutput",
    "VcReduction",
    "cai_meyer_graph",
    "coloring_from_assignment",
    "f_clause_trace",
    "f_transform",
    "f_triangle_opt",
    "f_vc_reduction",
    "g_opt",
    "g_opt_vertex",
    "g_transform",
    "join_lift",
    "pw_transform",
    "pw_witness",
    "sat_witness",
    "theta_gadget",
    "vc_reduction",
    "vc_triangle_opt",
]
