"""Slope limiters: per-cell correction factors from neighbourhood bounds.

Every strategy is built on the same Barth-Jespersen correction-factor
primitive: the largest factor in [0, 1] such that mean + alpha * (p - mean)
stays inside the bounds assigned to a constrained point. The cell factor is
the minimum over the strategy's constraint set:

* unlimited    no constraints, alpha = 1.
* bj           every flux quadrature point against the min/max cell mean over
               the inclusive face-sharing neighbourhood of the cell.
* kuzmin       the four corner values of the linear reconstruction against
               the min/max over the four cells sharing each corner vertex
               (linear reconstructions only, so second order only).
* nk           every face quadrature point against the min/max of the two
               cell means sharing that face.
* n2n          every face quadrature point against the min/max over the union
               of the two cells' face-neighbour sets; the fourth-order scheme
               additionally constrains its centre value by the 13-cell
               diamond bounds, since the centre carries decomposition weight.
* global       every decomposition point against field-wide bounds.

Bounds are always taken from the stage input field, so each forward Euler
stage inherits the matching cell-mean maximum principle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import fv2 as _fv2
from . import fv4 as _fv4
from .grid import (
    NK_INCLUSIVE,
    N2_UNION_N,
    VN,
    CellIndex,
    FaceId,
    Grid,
    face_union_neighborhood,
    neighbor4_reduce,
    neighborhood,
    neighborhood_minmax,
    shift,
)

SCHEME_FV2 = "fv2"
SCHEME_FV4 = "fv4"
SCHEMES = (SCHEME_FV2, SCHEME_FV4)


class LimiterKind(str, Enum):
    UNLIMITED = "unlimited"
    BJ = "bj"
    KUZMIN = "kuzmin"
    NK_MP = "nk"
    N2N_MP = "n2n"
    GLOBAL = "global"


# neighbourhood on which each kind's cell-mean maximum principle holds
MP_NEIGHBORHOOD = {
    LimiterKind.BJ: N2_UNION_N,
    LimiterKind.KUZMIN: VN,
    LimiterKind.NK_MP: NK_INCLUSIVE,
    LimiterKind.N2N_MP: N2_UNION_N,
}


@dataclass(frozen=True)
class Bounds:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty bounds [{self.lo}, {self.hi}]")


def bj_factor(p_val: float, mean: float, b: Bounds) -> float:
    """Largest alpha in [0, 1] with mean + alpha * (p_val - mean) in bounds.

    The three branches are exact sign tests; values equal to the mean are
    never limited."""
    d = p_val - mean
    if d > 0.0:
        a = min(1.0, (b.hi - mean) / d)
    elif d < 0.0:
        a = min(1.0, (b.lo - mean) / d)
    else:
        a = 1.0
    return min(1.0, max(0.0, a))


def _bj_factor_arrays(p, mean, lo, hi) -> np.ndarray:
    d = p - mean
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        up = (hi - mean) / d
        dn = (lo - mean) / d
    a = np.where(d > 0.0, up, np.where(d < 0.0, dn, 1.0))
    return np.clip(a, 0.0, 1.0)


def face_bounds(kind: LimiterKind, u: np.ndarray, f: FaceId, g: Grid) -> Bounds:
    """Bounds assigned to the flux quadrature points of one face."""
    if kind is LimiterKind.NK_MP:
        cells = list(f.cells(g))
    elif kind is LimiterKind.N2N_MP:
        cells = face_union_neighborhood(g, f)
    else:
        raise ValueError(f"face bounds are not defined for the {kind.value} limiter")
    vals = [u[c] for c in cells]
    return Bounds(float(min(vals)), float(max(vals)))


def cell_bounds(
    kind: LimiterKind,
    u: np.ndarray,
    k: CellIndex,
    g: Grid,
    global_mm: Bounds | None = None,
) -> Bounds:
    """Cell-level bounds: used by bj for all flux points and by nk/n2n for
    non-flux-contributing points."""
    if kind is LimiterKind.GLOBAL:
        if global_mm is None:
            raise ValueError("global limiter requires field-wide bounds")
        return global_mm
    if kind in (LimiterKind.BJ, LimiterKind.NK_MP):
        cells = neighborhood(g, k, NK_INCLUSIVE)
    elif kind is LimiterKind.N2N_MP:
        cells = neighborhood(g, k, N2_UNION_N)
    else:
        raise ValueError(f"cell bounds are not defined for the {kind.value} limiter")
    vals = [u[c] for c in cells]
    return Bounds(float(min(vals)), float(max(vals)))


def vertex_bounds(u: np.ndarray, v: CellIndex, g: Grid) -> Bounds:
    """Bounds over the four cells sharing vertex (x_{i+1/2}, y_{j+1/2})."""
    i, j = v
    vals = [u[g.wrap(i + di, j + dj)] for di in (0, 1) for dj in (0, 1)]
    return Bounds(float(min(vals)), float(max(vals)))


def global_bounds(u: np.ndarray) -> Bounds:
    return Bounds(float(u.min()), float(u.max()))


def _fv2_point_faces(i: int, j: int) -> list[tuple[str, FaceId]]:
    return [
        ("right", FaceId("v", i, j)),
        ("left", FaceId("v", i - 1, j)),
        ("top", FaceId("h", i, j)),
        ("bottom", FaceId("h", i, j - 1)),
    ]


def limit_cell(
    kind: LimiterKind,
    scheme: str,
    recon,
    u: np.ndarray,
    g: Grid,
    k: CellIndex,
    global_mm: Bounds | None = None,
) -> float:
    """Reference per-cell factor, computed point by point from the unlimited
    reconstruction (recon.alpha must be 1)."""
    if kind is LimiterKind.UNLIMITED:
        return 1.0
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    i, j = k
    mean = float(recon.mean[i, j])

    if scheme == SCHEME_FV2:
        a = recon.alpha[i, j] if isinstance(recon.alpha, np.ndarray) else recon.alpha
        sx = a * recon.ux[i, j] * (0.5 * g.dx)
        sy = a * recon.uy[i, j] * (0.5 * g.dy)
        traces = {
            "right": mean + sx,
            "left": mean - sx,
            "top": mean + sy,
            "bottom": mean - sy,
        }
        center = None
    else:
        xc = (i + 0.5) * g.dx
        yc = (j + 0.5) * g.dy
        names = ("r_minus", "r_plus", "l_minus", "l_plus",
                 "t_minus", "t_plus", "b_minus", "b_plus", "center")
        traces = {}
        for name, (fx, fy) in zip(names, _fv4._POINT_OFFSETS):
            traces[name] = _fv4.eval_q4(recon, g, i, j, xc + fx * g.dx, yc + fy * g.dy)
        center = traces.pop("center")

    constraints: list[tuple[float, Bounds]] = []
    if kind is LimiterKind.BJ:
        b = cell_bounds(kind, u, k, g)
        constraints = [(p, b) for p in traces.values()]
    elif kind is LimiterKind.GLOBAL:
        if global_mm is None:
            raise ValueError("global limiter requires field-wide bounds")
        constraints = [(p, global_mm) for p in traces.values()]
        if center is not None:
            constraints.append((center, global_mm))
    elif kind in (LimiterKind.NK_MP, LimiterKind.N2N_MP):
        if scheme == SCHEME_FV2:
            for name, f in _fv2_point_faces(i, j):
                constraints.append((traces[name], face_bounds(kind, u, f, g)))
        else:
            for name, f in _fv2_point_faces(i, j):
                b = face_bounds(kind, u, f, g)
                base = name[0] if name in ("right", "left", "top", "bottom") else name
                for suffix in ("_minus", "_plus"):
                    constraints.append((traces[base + suffix], b))
            constraints.append((center, cell_bounds(kind, u, k, g)))
    elif kind is LimiterKind.KUZMIN:
        if scheme != SCHEME_FV2:
            raise ValueError(
                "the vertex limiter applies to linear reconstructions only"
            )
        sx = 0.5 * g.dx * recon.ux[i, j]
        sy = 0.5 * g.dy * recon.uy[i, j]
        corners = {
            (i, j): mean + sx + sy,          # NE corner touches vertex (i, j)
            (i - 1, j): mean - sx + sy,      # NW
            (i, j - 1): mean + sx - sy,      # SE
            (i - 1, j - 1): mean - sx - sy,  # SW
        }
        constraints = [(p, vertex_bounds(u, v, g)) for v, p in corners.items()]
    else:  # pragma: no cover
        raise ValueError(f"unknown limiter kind {kind!r}")

    return min((bj_factor(p, mean, b) for p, b in constraints), default=1.0)


def _face_bound_arrays(kind: LimiterKind, u: np.ndarray):
    """(lo_v, hi_v, lo_h, hi_h), each indexed by the face's owner cell."""
    if kind is LimiterKind.NK_MP:
        lo_v = np.minimum(u, shift(u, 1, 0))
        hi_v = np.maximum(u, shift(u, 1, 0))
        lo_h = np.minimum(u, shift(u, 0, 1))
        hi_h = np.maximum(u, shift(u, 0, 1))
    else:
        nmin = neighbor4_reduce(u, np.minimum)
        nmax = neighbor4_reduce(u, np.maximum)
        lo_v = np.minimum(nmin, shift(nmin, 1, 0))
        hi_v = np.maximum(nmax, shift(nmax, 1, 0))
        lo_h = np.minimum(nmin, shift(nmin, 0, 1))
        hi_h = np.maximum(nmax, shift(nmax, 0, 1))
    return lo_v, hi_v, lo_h, hi_h


def limiter_alpha(
    kind: LimiterKind,
    scheme: str,
    recon,
    u: np.ndarray,
    g: Grid,
    global_mm: Bounds | None = None,
    traces=None,
) -> np.ndarray:
    """Per-cell limiter factor for the whole field.

    recon must be unlimited (alpha = 1); pass traces to reuse an existing
    evaluation of the reconstruction at the quadrature points.
    """
    if kind is LimiterKind.UNLIMITED:
        return np.ones(g.shape)
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")

    mean = recon.mean
    if scheme == SCHEME_FV2:
        tr = traces if traces is not None else _fv2.face_traces(recon, g)
        flux_pts = {"right": tr.right, "left": tr.left, "top": tr.top, "bottom": tr.bottom}
        center = None
    else:
        tr = traces if traces is not None else _fv4.gauss_traces(recon, g)
        flux_pts = {
            "r_minus": tr.r_minus, "r_plus": tr.r_plus,
            "l_minus": tr.l_minus, "l_plus": tr.l_plus,
            "t_minus": tr.t_minus, "t_plus": tr.t_plus,
            "b_minus": tr.b_minus, "b_plus": tr.b_plus,
        }
        center = tr.center

    alpha = np.ones(g.shape)

    if kind is LimiterKind.BJ:
        lo, hi = neighborhood_minmax(u, NK_INCLUSIVE)
        for p in flux_pts.values():
            alpha = np.minimum(alpha, _bj_factor_arrays(p, mean, lo, hi))
        return alpha

    if kind is LimiterKind.GLOBAL:
        if global_mm is None:
            raise ValueError("global limiter requires field-wide bounds")
        pts = list(flux_pts.values()) + ([center] if center is not None else [])
        for p in pts:
            alpha = np.minimum(
                alpha, _bj_factor_arrays(p, mean, global_mm.lo, global_mm.hi)
            )
        return alpha

    if kind in (LimiterKind.NK_MP, LimiterKind.N2N_MP):
        lo_v, hi_v, lo_h, hi_h = _face_bound_arrays(kind, u)
        # bounds seen from the cell: its left face is owned by (i-1, j)
        by_side = {
            "right": (lo_v, hi_v),
            "left": (shift(lo_v, -1, 0), shift(hi_v, -1, 0)),
            "top": (lo_h, hi_h),
            "bottom": (shift(lo_h, 0, -1), shift(hi_h, 0, -1)),
        }
        for name, p in flux_pts.items():
            side = name.split("_")[0]
            side = {"r": "right", "l": "left", "t": "top", "b": "bottom"}.get(side, side)
            lo, hi = by_side[side]
            alpha = np.minimum(alpha, _bj_factor_arrays(p, mean, lo, hi))
        if center is not None:
            nb = NK_INCLUSIVE if kind is LimiterKind.NK_MP else N2_UNION_N
            lo, hi = neighborhood_minmax(u, nb)
            alpha = np.minimum(alpha, _bj_factor_arrays(center, mean, lo, hi))
        return alpha

    if kind is LimiterKind.KUZMIN:
        if scheme != SCHEME_FV2:
            raise ValueError("the vertex limiter applies to linear reconstructions only")
        vmin = np.minimum(
            np.minimum(u, shift(u, 1, 0)), np.minimum(shift(u, 0, 1), shift(u, 1, 1))
        )
        vmax = np.maximum(
            np.maximum(u, shift(u, 1, 0)), np.maximum(shift(u, 0, 1), shift(u, 1, 1))
        )
        sx = 0.5 * g.dx * recon.ux
        sy = 0.5 * g.dy * recon.uy
        corner_bounds = [
            (mean + sx + sy, vmin, vmax),                                  # NE
            (mean - sx + sy, shift(vmin, -1, 0), shift(vmax, -1, 0)),      # NW
            (mean + sx - sy, shift(vmin, 0, -1), shift(vmax, 0, -1)),      # SE
            (mean - sx - sy, shift(vmin, -1, -1), shift(vmax, -1, -1)),    # SW
        ]
        for p, lo, hi in corner_bounds:
            alpha = np.minimum(alpha, _bj_factor_arrays(p, mean, lo, hi))
        return alpha

    raise ValueError(f"unknown limiter kind {kind!r}")  # pragma: no cover
