"""Experiment execution: stage operators with in-stage limiting, the step
loop, and per-stage diagnostics collection."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import fv2 as _fv2
from . import fv4 as _fv4
from .cases import ExperimentSpec, exact_solution, init_cell_means
from .diagnostics import ErrorReport, mp_check, relative_error
from .grid import Grid
from .limiters import SCHEME_FV2, Bounds, LimiterKind, global_bounds, limiter_alpha
from .timestepping import SspScheme, StepPlan, plan_steps, ssp_step
from .velocity import (
    FaceVelocity,
    QuadVelocity,
    StreamCase,
    StreamKind,
    cgrid_faces,
    gauss_face_speeds,
    time_factor,
)


def stream_face_velocity(case: StreamCase, g: Grid) -> Callable[[float], FaceVelocity]:
    """C-grid provider; the reversing cases scale one precomputed base field."""
    base = cgrid_faces(case, g, 0.0)
    if case.kind in (StreamKind.DIAG, StreamKind.SBR):
        return lambda t: base

    def at(t: float) -> FaceVelocity:
        phi = time_factor(case, t)
        return FaceVelocity(base.u * phi, base.v * phi, phi)

    return at


def stream_quad_velocity(case: StreamCase, g: Grid) -> Callable[[float], QuadVelocity]:
    """Gauss-point provider; same base-field scaling."""
    base = gauss_face_speeds(case, g, 0.0)
    if case.kind in (StreamKind.DIAG, StreamKind.SBR):
        return lambda t: base

    def at(t: float) -> QuadVelocity:
        phi = time_factor(case, t)
        return QuadVelocity(
            base.u_minus * phi, base.u_plus * phi,
            base.v_minus * phi, base.v_plus * phi, phi,
        )

    return at


@dataclass
class StageRecord:
    step: int
    stage: int
    t: float
    courant: float
    alpha_min: float
    mp_violation: float | None = None


@dataclass
class StageContext:
    """Snapshot of one stage handed to registered hooks."""

    scheme: str
    limiter: LimiterKind
    grid: Grid
    u: np.ndarray
    t: float
    recon: object
    traces: object
    alpha: np.ndarray
    global_mm: Bounds


StageHook = Callable[[StageContext], None]


class StageOperator:
    """limit-then-tendency spatial operator for one configuration.

    Appends a StageRecord per evaluation; the run loop sets step numbers and
    the maximum-principle observer fills in the violation afterwards.
    """

    def __init__(
        self,
        scheme: str,
        limiter: LimiterKind,
        g: Grid,
        velocity_at,
        dt: float,
        hooks: Sequence[StageHook] = (),
    ):
        self.scheme = scheme
        self.limiter = limiter
        self.g = g
        self.velocity_at = velocity_at
        self.dt = dt
        self.hooks = tuple(hooks)
        self.records: list[StageRecord] = []
        self.step = 0

    def __call__(self, u: np.ndarray, t: float) -> np.ndarray:
        g = self.g
        vel = self.velocity_at(t)
        gmm = global_bounds(u)
        if self.scheme == SCHEME_FV2:
            recon = _fv2.central_slopes(u, g)
            traces0 = _fv2.face_traces(recon, g)
            alpha = limiter_alpha(
                self.limiter, self.scheme, recon, u, g, global_mm=gmm, traces=traces0
            )
            traces = _fv2.limit_traces(traces0, u, alpha)
            rate = _fv2.courant_rate(vel, g)
            tend = _fv2.fv2_tendency(traces, vel, g)
        else:
            point = _fv4.project_p4(u)
            recon = _fv4.gradients_g3(u, point, g)
            traces0 = _fv4.gauss_traces(recon, g)
            alpha = limiter_alpha(
                self.limiter, self.scheme, recon, u, g, global_mm=gmm, traces=traces0
            )
            traces = _fv4.limit_gauss_traces(traces0, u, alpha)
            rate = _fv4.courant_rate(vel, g)
            tend = _fv4.fv4_tendency(traces, vel, g)

        self.records.append(
            StageRecord(
                step=self.step,
                stage=sum(r.step == self.step for r in self.records[-4:]),
                t=t,
                courant=self.dt * rate,
                alpha_min=float(np.min(alpha)),
            )
        )
        for hook in self.hooks:
            hook(
                StageContext(
                    scheme=self.scheme,
                    limiter=self.limiter,
                    grid=g,
                    u=u,
                    t=t,
                    recon=recon,
                    traces=traces0,
                    alpha=alpha,
                    global_mm=gmm,
                )
            )
        return tend


@dataclass
class RunResult:
    spec: ExperimentSpec
    plan: StepPlan
    initial: np.ndarray
    final: np.ndarray
    exact: np.ndarray
    report: ErrorReport
    stage_log: list[StageRecord] = field(default_factory=list)


def _mp_observer(op: StageOperator):
    kind = op.limiter

    def observe(stage_in: np.ndarray, stage_out: np.ndarray, t: float) -> None:
        gmm = global_bounds(stage_in) if kind is LimiterKind.GLOBAL else None
        op.records[-1].mp_violation = mp_check(stage_in, stage_out, kind, op.g, gmm)

    return observe


def run_experiment(
    spec: ExperimentSpec,
    *,
    mp_checks: bool = True,
    hooks: Sequence[StageHook] = (),
) -> RunResult:
    """Execute one experiment end to end and report its diagnostics."""
    g = spec.grid()
    u0 = init_cell_means(spec.ic, g, spec.resolved_init_mode())
    plan = plan_steps(spec, g)
    rk = SspScheme(spec.resolved_ssp())

    if spec.scheme == SCHEME_FV2:
        velocity_at = stream_face_velocity(spec.stream, g)
    else:
        velocity_at = stream_quad_velocity(spec.stream, g)
    op = StageOperator(spec.scheme, spec.limiter, g, velocity_at, plan.dt, hooks=hooks)
    observer = (
        _mp_observer(op)
        if mp_checks and spec.limiter is not LimiterKind.UNLIMITED
        else None
    )

    u = u0.copy()
    mass0 = float(u0.sum())
    prev_mass = mass0
    mass_scale = abs(mass0) if mass0 != 0.0 else 1.0
    max_step_drift = 0.0
    for n in range(plan.n_steps):
        op.step = n
        u = ssp_step(rk, u, n * plan.dt, plan.dt, op, observer)
        mass = float(u.sum())
        max_step_drift = max(max_step_drift, abs(mass - prev_mass) / mass_scale)
        prev_mass = mass

    exact = exact_solution(spec, spec.end_time)
    violations = [r.mp_violation for r in op.records if r.mp_violation is not None]
    report = ErrorReport(
        rel_l1=relative_error(u, exact, g, 1),
        rel_l2=relative_error(u, exact, g, 2),
        rel_linf=relative_error(u, exact, g, np.inf),
        min_val=float(u.min()),
        max_val=float(u.max()),
        max_mp_violation=max(violations) if violations else None,
        max_courant=max((r.courant for r in op.records), default=0.0),
        mass_drift=max_step_drift,
    )
    return RunResult(
        spec=spec,
        plan=plan,
        initial=u0,
        final=u,
        exact=exact,
        report=report,
        stage_log=op.records,
    )
