import numpy as np
import pytest

from mpfv.cases import ExperimentSpec, ICKind
from mpfv.grid import Grid
from mpfv.limiters import LimiterKind
from mpfv.timestepping import SspScheme, plan_steps, ssp_step
from mpfv.velocity import StreamCase, StreamKind


def spec_for(kind, res=100, cn=0.5, end=1.0, scheme="fv2"):
    return ExperimentSpec(
        scheme=scheme,
        limiter=LimiterKind.N2N_MP,
        stream=StreamCase(kind),
        ic=ICKind.LEVEQUE,
        resolution=(res, res),
        courant_target=cn,
        end_time=end,
    )


def test_plan_diag_unit_speeds():
    spec = spec_for(StreamKind.DIAG)
    plan = plan_steps(spec, spec.grid())
    assert plan.dt == pytest.approx(0.0025)
    assert plan.n_steps == 400


def test_plan_sbr_reference_step_count():
    spec = spec_for(StreamKind.SBR)
    plan = plan_steps(spec, spec.grid())
    assert abs(plan.n_steps - 1256) <= 1
    assert plan.n_steps * plan.dt == pytest.approx(1.0, abs=1e-12)


def test_plan_rounds_dt_down():
    spec = spec_for(StreamKind.SBR)
    plan = plan_steps(spec, spec.grid())
    import math

    from mpfv.velocity import speed_bound

    su, sv = speed_bound(spec.stream)
    raw = 0.5 / (su * 100 + sv * 100)
    assert plan.dt <= raw + 1e-18
    assert plan.n_steps == math.ceil(1.0 / raw - 1e-12)


def test_plan_zero_end_time():
    spec = spec_for(StreamKind.SBR, end=0.0)
    plan = plan_steps(spec, spec.grid())
    assert plan.n_steps == 0 and plan.dt == 0.0


def test_stage_offsets():
    assert plan_steps(spec_for(StreamKind.DIAG), Grid(16, 16)).stage_offsets == (0.0, 1.0)
    spec4 = spec_for(StreamKind.DIAG, scheme="fv4")
    assert plan_steps(spec4, Grid(16, 16)).stage_offsets == (0.0, 1.0, 0.5)


def test_zero_tendency_is_identity():
    u = np.arange(12.0).reshape(3, 4)
    op = lambda v, t: np.zeros_like(v)
    for scheme in SspScheme:
        out = ssp_step(scheme, u, 0.0, 0.1, op)
        assert np.allclose(out, u, atol=1e-15)


@pytest.mark.parametrize(
    "scheme,poly",
    [
        (SspScheme.FE, lambda z: 1 + z),
        (SspScheme.SSP22, lambda z: 1 + z + z**2 / 2),
        (SspScheme.SSP33, lambda z: 1 + z + z**2 / 2 + z**3 / 6),
    ],
)
def test_linear_amplification(scheme, poly):
    lam = -0.7
    dt = 0.31
    u = np.array([[2.0]])
    out = ssp_step(scheme, u, 0.0, dt, lambda v, t: lam * v)
    assert out[0, 0] == pytest.approx(2.0 * poly(lam * dt), rel=1e-14)


def test_stage_times_passed_to_operator():
    seen = []

    def op(v, t):
        seen.append(t)
        return np.zeros_like(v)

    u = np.zeros((2, 2))
    ssp_step(SspScheme.SSP33, u, 1.0, 0.2, op)
    assert seen == [1.0, 1.2, 1.1]


def test_observer_sees_forward_euler_stages():
    calls = []

    def op(v, t):
        return -v

    def obs(v_in, v_out, t):
        calls.append((v_in.copy(), v_out.copy(), t))

    u = np.full((2, 2), 1.0)
    dt = 0.5
    out = ssp_step(SspScheme.SSP22, u, 0.0, dt, op, observer=obs)
    assert len(calls) == 2
    # each recorded pair is one forward Euler stage
    for v_in, v_out, _ in calls:
        assert np.allclose(v_out, v_in + dt * (-v_in))
    assert np.allclose(out, 0.5 * u + 0.5 * (calls[1][1]))


def test_convex_combination_bounds():
    # with a frozen tendency every output lies in the hull of Euler stages
    rng = np.random.default_rng(4)
    u = rng.random((5, 5))
    tend = rng.standard_normal((5, 5))
    dt = 0.2
    for scheme in SspScheme:
        out = ssp_step(scheme, u, 0.0, dt, lambda v, t: tend)
        lo = np.minimum(u, u + dt * tend) - 1e-14
        hi = np.maximum(u, u + dt * tend) + 1e-14
        # each stage is u_k + dt*tend for convex u_k, so the hull is spanned
        # by the initial field and shifted copies
        assert np.all(out >= lo + dt * np.minimum(tend, 0) * 2 - 1e-12)
        assert np.all(out <= hi + dt * np.maximum(tend, 0) * 2 + 1e-12)
