"""
Grid and Field: the discrete stand-ins for R^d and W^{1,p} profiles.

Grids are immutable after construction and safe to share across
concurrent solves. Build them with weakcoupling.services.grid.build_grid().
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.enums import CoordinateKind


def frozen_array(array) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class GridSpec:
    """
    What to build: dimension, coordinate kind, node count, extent.

    extent is the outer radius (radial, log-radius) or the half-width (line).
    t_min is the inner cutoff in t = log r and is only read for log-radius.
    """

    d: int
    kind: CoordinateKind
    n: int
    extent: float
    t_min: float | None = None

    @property
    def t_max(self) -> float:
        return float(np.log(self.extent))

    def with_extent(self, extent: float, n: int | None = None) -> GridSpec:
        return replace(self, extent=float(extent), n=self.n if n is None else int(n))


@dataclass(frozen=True, eq=False)
class Grid:
    """
    Nodes, trapezoid weights and staggered difference data.

    Attributes:
        spec: The GridSpec this grid was built from
        nodes: Coordinates (x, r or t), strictly increasing
        weights: Trapezoid weights of the measure (radial origin carries 0)
        midpoints: Cell midpoints in the grid coordinate
        inv_spacing: 1 / (x_{i+1} - x_i) per cell
        free: Mask of nodes not pinned by a Dirichlet condition
        origin: Index of the node that carries u(0)
    """

    spec: GridSpec
    nodes: np.ndarray
    weights: np.ndarray
    midpoints: np.ndarray
    inv_spacing: np.ndarray
    free: np.ndarray
    origin: int
    omega: float

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def kind(self) -> CoordinateKind:
        return self.spec.kind

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def extent(self) -> float:
        return self.spec.extent

    @property
    def radii(self) -> np.ndarray:
        """Physical distance |x| of every node from the origin."""
        if self.kind == CoordinateKind.LINE:
            return np.abs(self.nodes)
        if self.kind == CoordinateKind.LOG_RADIUS:
            return np.exp(self.nodes)
        return self.nodes

    @property
    def interior(self) -> np.ndarray:
        """Free nodes with positive weight, excluding the inner boundary node of radial grids."""
        mask = self.free & (self.weights > 0)
        if self.kind != CoordinateKind.LINE:
            mask = mask.copy()
            mask[0] = False
        return mask

    def edge_measure(self, p: float) -> np.ndarray:
        """
        Midpoint weights for the Dirichlet sum of |du/dx|^p over each cell.

        In log-radius coordinates |u'(r)|^p r^{d-1} dr = |u_t|^p e^{(d-p)t} dt,
        which reduces to the uniform measure omega_d dt at p = d.
        """
        h = 1.0 / self.inv_spacing
        if self.kind == CoordinateKind.LINE:
            return h
        if self.kind == CoordinateKind.RADIAL:
            return self.omega * self.midpoints ** (self.d - 1) * h
        return self.omega * np.exp((self.d - p) * self.midpoints) * h

    def __repr__(self) -> str:
        return f"Grid({self.kind}, d={self.d}, n={self.size}, extent={self.extent:g})"


@dataclass(frozen=True, eq=False)
class Field:
    """Real samples on the nodes of a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.size,):
            raise WeakCouplingError(
                'SHAPE_MISMATCH', expected=self.grid.size, got=int(values.size),
            )
        if not np.all(np.isfinite(values)):
            raise WeakCouplingError('NUMERICAL_FAILURE', where='field')
        object.__setattr__(self, 'values', frozen_array(values))

    def __len__(self) -> int:
        return self.grid.size

    def __repr__(self) -> str:
        return f"Field({self.grid!r}, max={np.max(np.abs(self.values)):.6g})"
