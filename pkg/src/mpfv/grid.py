"""Uniform doubly periodic rectangular mesh and its neighbourhood algebra.

Cells carry an index pair (i, j) with i a column index along x and j a row
index along y; all index arithmetic wraps modulo (nx, ny). Field arrays are
numpy arrays of shape (nx, ny) indexed the same way, so axis 0 is x and
axis 1 is y throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

CellIndex = tuple[int, int]

# neighbourhood kinds
NK_INCLUSIVE = "nk_inclusive"  # face neighbours plus the cell itself (5-cell plus)
N2_UNION_N = "n2_union_n"      # squared inclusive face sharing set (13-cell diamond)
VN = "vn"                      # inclusive vertex sharing set (3x3 block)
NEIGHBORHOOD_KINDS = (NK_INCLUSIVE, N2_UNION_N, VN)

_PLUS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_DIAMOND = tuple(
    (di, dj) for di in range(-2, 3) for dj in range(-2, 3) if abs(di) + abs(dj) <= 2
)
_BLOCK3 = tuple((di, dj) for dj in (-1, 0, 1) for di in (-1, 0, 1))


@dataclass(frozen=True)
class Grid:
    """nx-by-ny uniform mesh of the doubly periodic unit square."""

    nx: int
    ny: int

    def __post_init__(self) -> None:
        if self.nx < 5 or self.ny < 5:
            raise ValueError(
                f"grid must be at least 5x5, got {self.nx}x{self.ny}; smaller grids "
                "make the neighbourhood stencils self-overlap under periodic wrap"
            )

    @property
    def dx(self) -> float:
        return 1.0 / self.nx

    @property
    def dy(self) -> float:
        return 1.0 / self.ny

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dy

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    def x_centers(self) -> np.ndarray:
        return (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return (np.arange(self.ny) + 0.5) * self.dy

    def x_faces(self) -> np.ndarray:
        """x coordinates of the +x faces, x_{i+1/2}."""
        return (np.arange(self.nx) + 1.0) * self.dx

    def y_faces(self) -> np.ndarray:
        """y coordinates of the +y faces, y_{j+1/2}."""
        return (np.arange(self.ny) + 1.0) * self.dy

    def center_mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x_centers(), self.y_centers(), indexing="ij")

    def wrap(self, i: int, j: int) -> CellIndex:
        return (i % self.nx, j % self.ny)


@dataclass(frozen=True)
class FaceId:
    """A face named by its owner cell: "v" is the owner's +x face, "h" the +y
    face, so every interior face is identified exactly once. The outward
    normal from the owner is (1, 0) for "v" and (0, 1) for "h"."""

    orientation: Literal["v", "h"]
    i: int
    j: int

    def cells(self, g: Grid) -> tuple[CellIndex, CellIndex]:
        k = g.wrap(self.i, self.j)
        if self.orientation == "v":
            return k, g.wrap(self.i + 1, self.j)
        return k, g.wrap(self.i, self.j + 1)


def face_neighbors(g: Grid, k: CellIndex) -> list[CellIndex]:
    """The four face neighbours of k, in the fixed order [+x, -x, +y, -y]."""
    i, j = k
    return [g.wrap(i + di, j + dj) for di, dj in _PLUS]


def neighborhood(g: Grid, k: CellIndex, kind: str) -> list[CellIndex]:
    """Deduplicated neighbourhood of cell k, in row-major order.

    nk_inclusive is N(K) plus K itself (5 cells), n2_union_n is every cell at
    Manhattan distance <= 2 (13 cells), vn is the 3x3 block of vertex-sharing
    cells (9 cells). Cardinalities hold for any grid of at least 5x5.
    """
    i, j = k
    if kind == NK_INCLUSIVE:
        offsets = ((0, 0),) + _PLUS
    elif kind == N2_UNION_N:
        offsets = _DIAMOND
    elif kind == VN:
        offsets = _BLOCK3
    else:
        raise ValueError(f"unknown neighbourhood kind {kind!r}")
    cells = {g.wrap(i + di, j + dj) for di, dj in offsets}
    return sorted(cells, key=lambda c: (c[1], c[0]))


def face_union_neighborhood(g: Grid, f: FaceId) -> list[CellIndex]:
    """Union of the face-neighbour sets of the two cells sharing f.

    On a quad grid this is 8 cells: both cells, the two lateral neighbours of
    each, and the far neighbour of each.
    """
    k, ell = f.cells(g)
    cells = set(face_neighbors(g, k)) | set(face_neighbors(g, ell))
    return sorted(cells, key=lambda c: (c[1], c[0]))


def shift(u: np.ndarray, di: int, dj: int) -> np.ndarray:
    """u sampled at (i + di, j + dj) with periodic wrap."""
    out = u
    if di:
        out = np.roll(out, -di, axis=0)
    if dj:
        out = np.roll(out, -dj, axis=1)
    return out


ReduceOp = Callable[[np.ndarray, np.ndarray], np.ndarray]


def neighbor4_reduce(u: np.ndarray, op: ReduceOp) -> np.ndarray:
    """Reduce over N(K), the four face neighbours, K excluded."""
    return op(op(shift(u, 1, 0), shift(u, -1, 0)), op(shift(u, 0, 1), shift(u, 0, -1)))


def plus_reduce(u: np.ndarray, op: ReduceOp) -> np.ndarray:
    """Reduce over the inclusive 5-cell plus stencil."""
    return op(u, neighbor4_reduce(u, op))


def diamond_reduce(u: np.ndarray, op: ReduceOp) -> np.ndarray:
    """Reduce over the 13-cell diamond; the plus stencil composed with itself."""
    return plus_reduce(plus_reduce(u, op), op)


def block3_reduce(u: np.ndarray, op: ReduceOp) -> np.ndarray:
    """Reduce over the 3x3 vertex-sharing block, separably."""
    rows = op(u, op(shift(u, 1, 0), shift(u, -1, 0)))
    return op(rows, op(shift(rows, 0, 1), shift(rows, 0, -1)))


_REDUCERS = {NK_INCLUSIVE: plus_reduce, N2_UNION_N: diamond_reduce, VN: block3_reduce}


def neighborhood_minmax(u: np.ndarray, kind: str) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell (min, max) of u over the given neighbourhood kind."""
    try:
        red = _REDUCERS[kind]
    except KeyError:
        raise ValueError(f"unknown neighbourhood kind {kind!r}") from None
    return red(u, np.minimum), red(u, np.maximum)
