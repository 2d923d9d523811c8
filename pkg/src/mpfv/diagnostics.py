"""Error norms, observed convergence order, and stage-wise maximum-principle
verification."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Grid, neighborhood_minmax
from .limiters import MP_NEIGHBORHOOD, Bounds, LimiterKind


@dataclass(frozen=True)
class ErrorReport:
    """Run summary: relative errors, extrema, and the worst per-stage
    maximum-principle violation and Courant number seen."""

    rel_l1: float
    rel_l2: float
    rel_linf: float
    min_val: float
    max_val: float
    max_mp_violation: float | None
    max_courant: float
    mass_drift: float = 0.0


def relative_error(u: np.ndarray, u_exact: np.ndarray, g: Grid, p) -> float:
    """||u - u_exact||_p / ||u_exact||_p in the cell-mean discrete norms."""
    if u.shape != u_exact.shape:
        raise ValueError("fields live on different grids")
    diff = u - u_exact
    vol = g.cell_volume
    if p == 1:
        num = np.abs(diff).sum() * vol
        den = np.abs(u_exact).sum() * vol
    elif p == 2:
        num = math.sqrt((diff * diff).sum() * vol)
        den = math.sqrt((u_exact * u_exact).sum() * vol)
    elif p in (np.inf, math.inf):
        num = np.abs(diff).max()
        den = np.abs(u_exact).max()
    else:
        raise ValueError(f"unsupported norm p={p!r}")
    if den == 0.0:
        raise ValueError("exact solution has zero norm")
    return float(num / den)


def observed_order(e_coarse: float, e_fine: float) -> float:
    """log2 error ratio between resolutions that differ by exactly 2x."""
    if e_coarse <= 0.0 or e_fine <= 0.0:
        raise ValueError("errors must be positive to estimate an order")
    return math.log(e_coarse / e_fine) / math.log(2.0)


def stage_bounds(
    stage_in: np.ndarray,
    kind: LimiterKind,
    g: Grid,
    global_mm: Bounds | None = None,
):
    """Cell-mean bounds the limiter kind guarantees for one forward Euler
    stage started from stage_in."""
    if kind is LimiterKind.GLOBAL:
        if global_mm is None:
            raise ValueError("global limiter requires field-wide bounds")
        return global_mm.lo, global_mm.hi
    return neighborhood_minmax(stage_in, MP_NEIGHBORHOOD[kind])


def mp_check(
    stage_in: np.ndarray,
    stage_out: np.ndarray,
    kind: LimiterKind,
    g: Grid,
    global_mm: Bounds | None = None,
) -> float | None:
    """Max distance of stage_out outside the kind's declared bounds on
    stage_in; None for the unlimited scheme, where no principle applies."""
    if kind is LimiterKind.UNLIMITED:
        return None
    lo, hi = stage_bounds(stage_in, kind, g, global_mm)
    over = float((stage_out - hi).max())
    under = float((lo - stage_out).max())
    return max(0.0, over, under)
