"""Maximum-principle-preserving finite volume advection on periodic 2D grids."""

from .cases import ExperimentSpec, ICKind, eval_ic, exact_solution, init_cell_means
from .diagnostics import ErrorReport, mp_check, observed_order, relative_error
from .flux import upwind_flux
from .grid import FaceId, Grid, face_neighbors, face_union_neighborhood, neighborhood
from .limiters import (
    SCHEME_FV2,
    SCHEME_FV4,
    Bounds,
    LimiterKind,
    bj_factor,
    cell_bounds,
    face_bounds,
    limit_cell,
    limiter_alpha,
    vertex_bounds,
)
from .runner import RunResult, run_experiment
from .timestepping import SspScheme, StepPlan, plan_steps, ssp_step
from .velocity import (
    FaceVelocity,
    QuadVelocity,
    StreamCase,
    StreamKind,
    analytic_velocity,
    cgrid_faces,
    gauss_face_speeds,
)

__version__ = "0.1.0"
