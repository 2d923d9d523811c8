"""Fourth-order finite volume operator.

Pipeline per stage: deconvolve cell means to point values (project_p4),
build all derivatives through third order with centred stencils
(gradients_g3), evaluate the mean-preserving cubic at the flux-contributing
Gauss points and the cell centre (gauss_traces), then integrate upwind
fluxes with the 2-point Gauss rule per face (fv4_tendency). The decomposition
mean = center/2 + (sum of the 8 face Gauss values)/16 holds identically and
is what the limiter theory acts on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flux import upwind_flux
from .fv2 import flux_divergence_tendency
from .grid import Grid
from .velocity import GAUSS_OFFSET, QuadVelocity

# 4th-order centred first/second derivative weights and the 3rd derivative
# weights, listed over sample offsets [+n .. -n]; the orientation is pinned by
# exactness on the monomials x, x^2, x^3.
W1 = (np.array([-1.0, 8.0, 0.0, -8.0, 1.0]) / 12.0, (2, 1, 0, -1, -2))
W2 = (np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0, (2, 1, 0, -1, -2))
W3 = (np.array([-1.0, 8.0, -13.0, 0.0, 13.0, -8.0, 1.0]) / 8.0, (3, 2, 1, 0, -1, -2, -3))


def apply_stencil(a: np.ndarray, stencil, axis: int, denom: float) -> np.ndarray:
    """Weighted sum of periodic shifts of a along axis, divided by denom."""
    weights, offsets = stencil
    out = np.zeros_like(a)
    for w, k in zip(weights, offsets):
        if w != 0.0:
            out += w * np.roll(a, -k, axis=axis)
    out /= denom
    return out


def project_p4(u: np.ndarray) -> np.ndarray:
    """Fourth-order map from cell means to cell-centre point values."""
    ddx = np.roll(u, -1, axis=0) - 2.0 * u + np.roll(u, 1, axis=0)
    ddy = np.roll(u, -1, axis=1) - 2.0 * u + np.roll(u, 1, axis=1)
    return u - ddx / 24.0 - ddy / 24.0


@dataclass
class CubicRecon:
    """Cubic subcell reconstruction coefficients for every cell.

    The polynomial about the cell centre, with ((x-x_i)^2 - dx^2/12)-type
    corrections on the pure second derivatives so it averages to mean."""

    mean: np.ndarray
    point: np.ndarray
    ux: np.ndarray
    uy: np.ndarray
    uxx: np.ndarray
    uxy: np.ndarray
    uyy: np.ndarray
    uxxx: np.ndarray
    uxxy: np.ndarray
    uxyy: np.ndarray
    uyyy: np.ndarray
    alpha: np.ndarray | float = 1.0

    def deriv_stack(self) -> np.ndarray:
        return np.stack(
            [
                self.mean,
                self.ux,
                self.uy,
                self.uxx,
                self.uxy,
                self.uyy,
                self.uxxx,
                self.uxxy,
                self.uxyy,
                self.uyyy,
            ]
        )


def gradients_g3(mean: np.ndarray, point: np.ndarray, g: Grid) -> CubicRecon:
    """All derivatives through third order from the projected point values.

    Cross terms come from a second pass of the first-derivative stencil:
    uxy from uy, uxxy from uxx, uxyy from uyy.
    """
    ux = apply_stencil(point, W1, 0, g.dx)
    uy = apply_stencil(point, W1, 1, g.dy)
    uxx = apply_stencil(point, W2, 0, g.dx * g.dx)
    uyy = apply_stencil(point, W2, 1, g.dy * g.dy)
    uxxx = apply_stencil(point, W3, 0, g.dx**3)
    uyyy = apply_stencil(point, W3, 1, g.dy**3)
    uxy = apply_stencil(uy, W1, 0, g.dx)
    uxxy = apply_stencil(uxx, W1, 1, g.dy)
    uxyy = apply_stencil(uyy, W1, 0, g.dx)
    return CubicRecon(
        mean=mean,
        point=point,
        ux=ux,
        uy=uy,
        uxx=uxx,
        uxy=uxy,
        uyy=uyy,
        uxxx=uxxx,
        uxxy=uxxy,
        uxyy=uxyy,
        uyyy=uyyy,
        alpha=1.0,
    )


def _coeff_row(xi: float, eta: float, g: Grid) -> list[float]:
    """Monomial weights multiplying the deriv_stack entries at offset (xi, eta)."""
    return [
        1.0,
        xi,
        eta,
        0.5 * (xi * xi - g.dx * g.dx / 12.0),
        xi * eta,
        0.5 * (eta * eta - g.dy * g.dy / 12.0),
        xi**3 / 6.0,
        0.5 * xi * xi * eta,
        0.5 * xi * eta * eta,
        eta**3 / 6.0,
    ]


def eval_offsets(r: CubicRecon, g: Grid, xi: float, eta: float) -> np.ndarray:
    """Evaluate the (limited) cubic at offset (xi, eta) from every cell centre."""
    c = _coeff_row(xi, eta, g)
    p = c[0] * r.mean
    for w, d in zip(
        c[1:],
        (r.ux, r.uy, r.uxx, r.uxy, r.uyy, r.uxxx, r.uxxy, r.uxyy, r.uyyy),
    ):
        if w != 0.0:
            p = p + w * d
    a = r.alpha
    if isinstance(a, np.ndarray) or a != 1.0:
        p = r.mean + a * (p - r.mean)
    return p


def eval_q4(r: CubicRecon, g: Grid, i: int, j: int, x: float, y: float) -> float:
    """Point value of cell (i, j)'s reconstruction at the physical point (x, y)."""
    a = r.alpha[i, j] if isinstance(r.alpha, np.ndarray) else r.alpha
    sub = CubicRecon(
        mean=r.mean[i, j],
        point=r.point[i, j],
        ux=r.ux[i, j],
        uy=r.uy[i, j],
        uxx=r.uxx[i, j],
        uxy=r.uxy[i, j],
        uyy=r.uyy[i, j],
        uxxx=r.uxxx[i, j],
        uxxy=r.uxxy[i, j],
        uxyy=r.uxyy[i, j],
        uyyy=r.uyyy[i, j],
        alpha=a,
    )
    xi = x - (i + 0.5) * g.dx
    eta = y - (j + 0.5) * g.dy
    return float(eval_offsets(sub, g, xi, eta))


@dataclass
class GaussTraces4:
    """The 8 flux-contributing Gauss-point values and the centre value.

    minus/plus name the sign of the transverse offset: r_minus sits at
    (x_{i+1/2}, y_j - dy * GAUSS_OFFSET), t_minus at (x_i - dx * GAUSS_OFFSET,
    y_{j+1/2}), and so on. r_minus of cell (i, j) and l_minus of cell
    (i+1, j) are the two traces of the same physical point.
    """

    r_minus: np.ndarray
    r_plus: np.ndarray
    l_minus: np.ndarray
    l_plus: np.ndarray
    t_minus: np.ndarray
    t_plus: np.ndarray
    b_minus: np.ndarray
    b_plus: np.ndarray
    center: np.ndarray

    def face_points(self) -> tuple[np.ndarray, ...]:
        return (
            self.r_minus,
            self.r_plus,
            self.l_minus,
            self.l_plus,
            self.t_minus,
            self.t_plus,
            self.b_minus,
            self.b_plus,
        )

    def all_points(self) -> tuple[np.ndarray, ...]:
        return self.face_points() + (self.center,)


# offsets of the nine evaluation points as (xi multiple of dx, eta multiple of dy)
_POINT_OFFSETS = (
    (0.5, -GAUSS_OFFSET),   # r_minus
    (0.5, GAUSS_OFFSET),    # r_plus
    (-0.5, -GAUSS_OFFSET),  # l_minus
    (-0.5, GAUSS_OFFSET),   # l_plus
    (-GAUSS_OFFSET, 0.5),   # t_minus
    (GAUSS_OFFSET, 0.5),    # t_plus
    (-GAUSS_OFFSET, -0.5),  # b_minus
    (GAUSS_OFFSET, -0.5),   # b_plus
    (0.0, 0.0),             # center
)


def gauss_traces(r: CubicRecon, g: Grid) -> GaussTraces4:
    """Evaluate the reconstruction at the 8 face Gauss points and the centre."""
    coeffs = np.array(
        [_coeff_row(fx * g.dx, fy * g.dy, g) for fx, fy in _POINT_OFFSETS]
    )
    vals = np.tensordot(coeffs, r.deriv_stack(), axes=1)
    a = r.alpha
    if isinstance(a, np.ndarray) or a != 1.0:
        vals = r.mean + a * (vals - r.mean)
    return GaussTraces4(*vals)


def limit_gauss_traces(tr: GaussTraces4, mean: np.ndarray, alpha) -> GaussTraces4:
    """Scale every trace's deviation from the cell mean by alpha."""
    return GaussTraces4(*(mean + alpha * (p - mean) for p in tr.all_points()))


def zhang_residual(tr: GaussTraces4, mean: np.ndarray) -> float:
    """Max deviation of center/2 + (sum of face Gauss values)/16 from mean."""
    s = sum(tr.face_points())
    return float(np.abs(0.5 * tr.center + s / 16.0 - mean).max())


def fv4_tendency(tr: GaussTraces4, qvel: QuadVelocity, g: Grid) -> np.ndarray:
    """Cell-mean tendency with equally weighted 2-point Gauss fluxes per face."""
    fv = 0.5 * (
        upwind_flux(tr.r_minus, np.roll(tr.l_minus, -1, axis=0), qvel.u_minus)
        + upwind_flux(tr.r_plus, np.roll(tr.l_plus, -1, axis=0), qvel.u_plus)
    )
    fh = 0.5 * (
        upwind_flux(tr.t_minus, np.roll(tr.b_minus, -1, axis=1), qvel.v_minus)
        + upwind_flux(tr.t_plus, np.roll(tr.b_plus, -1, axis=1), qvel.v_plus)
    )
    return flux_divergence_tendency(fv, fh, g)


def courant_rate(qvel: QuadVelocity, g: Grid) -> float:
    """Cell Courant rate with each face speed taken as the worse Gauss point."""
    out_pos = np.maximum(np.maximum(qvel.u_minus, qvel.u_plus), 0.0)
    out_neg = np.maximum(np.maximum(-qvel.u_minus, -qvel.u_plus), 0.0)
    out_x = out_pos + np.roll(out_neg, 1, axis=0)
    vp = np.maximum(np.maximum(qvel.v_minus, qvel.v_plus), 0.0)
    vm = np.maximum(np.maximum(-qvel.v_minus, -qvel.v_plus), 0.0)
    out_y = vp + np.roll(vm, 1, axis=1)
    return float((out_x / g.dx + out_y / g.dy).max())


def fv4_courant(qvel: QuadVelocity, g: Grid, dt: float) -> float:
    return dt * courant_rate(qvel, g)
