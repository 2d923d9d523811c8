"""SSP Runge-Kutta drivers in Shu-Osher form and step planning.

Each scheme is a convex combination of forward Euler stages, so a spatial
operator that is limited stage by stage passes its per-stage maximum
principle on to the full step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .cases import ExperimentSpec
from .grid import Grid
from .velocity import speed_bound


class SspScheme(str, Enum):
    FE = "fe"
    SSP22 = "ssp22"
    SSP33 = "ssp33"


STAGE_OFFSETS = {
    SspScheme.FE: (0.0,),
    SspScheme.SSP22: (0.0, 1.0),
    SspScheme.SSP33: (0.0, 1.0, 0.5),
}


@dataclass(frozen=True)
class StepPlan:
    dt: float
    n_steps: int
    stage_offsets: tuple[float, ...]


def plan_steps(spec: ExperimentSpec, g: Grid) -> StepPlan:
    """Pick dt so the worst-case stage Courant number meets the target.

    The rate uses the analytic componentwise speed bounds at unit time
    factor, which dominate every discrete face speed at every stage time;
    dt is then shrunk so the step count divides the end time exactly.
    """
    offsets = STAGE_OFFSETS[SspScheme(spec.resolved_ssp())]
    if spec.end_time == 0.0:
        return StepPlan(dt=0.0, n_steps=0, stage_offsets=offsets)
    su, sv = speed_bound(spec.stream)
    rate = su / g.dx + sv / g.dy
    if rate == 0.0:
        raise ValueError("zero velocity field leaves dt unbounded")
    raw_dt = spec.courant_target / rate
    n = max(1, math.ceil(spec.end_time / raw_dt - 1e-12))
    return StepPlan(dt=spec.end_time / n, n_steps=n, stage_offsets=offsets)


StageOp = Callable[[np.ndarray, float], np.ndarray]
StageObserver = Callable[[np.ndarray, np.ndarray, float], None]


def ssp_step(
    scheme: SspScheme,
    u: np.ndarray,
    t: float,
    dt: float,
    stage_op: StageOp,
    observer: StageObserver | None = None,
) -> np.ndarray:
    """Advance one step; stage_op(u, t) returns the spatial tendency.

    The observer, if given, sees every forward Euler stage as
    (stage input, stage output, stage time)."""

    def fe(v: np.ndarray, ts: float) -> np.ndarray:
        out = v + dt * stage_op(v, ts)
        if observer is not None:
            observer(v, out, ts)
        return out

    if scheme is SspScheme.FE:
        return fe(u, t)
    if scheme is SspScheme.SSP22:
        u1 = fe(u, t)
        return 0.5 * u + 0.5 * fe(u1, t + dt)
    if scheme is SspScheme.SSP33:
        u1 = fe(u, t)
        u2 = 0.75 * u + 0.25 * fe(u1, t + dt)
        return u / 3.0 + (2.0 / 3.0) * fe(u2, t + 0.5 * dt)
    raise ValueError(f"unknown time scheme {scheme!r}")
