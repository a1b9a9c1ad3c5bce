"""Coconvex sets over pointed cones.

Thin wrapper around the compiled core: cone construction, Wulff shapes,
L_p and log co-sums, mixed volumes, Minkowski-problem solvers and the
inequality check suites.
"""

from ._core import (
    CCoconvexSet,
    Cone,
    CoconvexError,
    from_json,
    log_co_sum,
    log_mixed_volume,
    lp_mixed_volume,
    mixed_volume_1,
    p_co_sum,
    render_svg,
    run_check_suite,
    solve_log_minkowski,
    solve_lp_minkowski,
    to_json,
    variational_derivative,
    wulff,
)

__all__ = [
    "CCoconvexSet",
    "Cone",
    "CoconvexError",
    "from_json",
    "log_co_sum",
    "log_mixed_volume",
    "lp_mixed_volume",
    "mixed_volume_1",
    "p_co_sum",
    "render_svg",
    "run_check_suite",
    "solve_log_minkowski",
    "solve_lp_minkowski",
    "to_json",
    "variational_derivative",
    "wulff",
]
