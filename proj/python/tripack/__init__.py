"""Online triangle packing: deterministic curves, process simulation and exact oracles."""

import json as _json

from ._tripack import (
    TheoryCurves,
    count_triangles,
    ode_residual,
    ratio_sup,
    run_process,
    solve_exact,
    threshold_c1,
    threshold_c2,
    threshold_tf,
    upsilon,
    zeta,
)
from . import _tripack


def constants():
    return _json.loads(_tripack._constants())


def simulate(process, **kwargs):
    """Aggregate of `samples` runs; same fields as the `simulate` command."""
    return _json.loads(_tripack._simulate(process, **kwargs))


def tuza(n, **kwargs):
    return _json.loads(_tripack._tuza(n, **kwargs))


__all__ = [
    "TheoryCurves",
    "constants",
    "count_triangles",
    "ode_residual",
    "ratio_sup",
    "run_process",
    "simulate",
    "solve_exact",
    "threshold_c1",
    "threshold_c2",
    "threshold_tf",
    "tuza",
    "upsilon",
    "zeta",
]
