"""
Grid construction and quadrature.

Three coordinate kinds, all with trapezoid weights and staggered differences:
    line        x in [-L, L], node at 0, Dirichlet at both ends
    radial      r in [0, L], node at r = 0, Dirichlet at r = L
    log-radius  t = log r in [t_min, log L], Neumann at t_min, Dirichlet at log L
"""

import logging
import math

import numpy as np

from weakcoupling.conf import weakcoupling_settings
from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.enums import CoordinateKind
from weakcoupling.models.grid import Field, Grid, GridSpec, frozen_array

logger = logging.getLogger('weakcoupling')


def _validate(spec: GridSpec) -> None:
    problems = {}
    if int(spec.d) != spec.d or spec.d < 1:
        problems['d'] = spec.d
    if spec.n < weakcoupling_settings.MIN_GRID_NODES:
        problems['n'] = spec.n
        problems['min_nodes'] = weakcoupling_settings.MIN_GRID_NODES
    if not (math.isfinite(spec.extent) and spec.extent > 0):
        problems['extent'] = spec.extent
    if spec.kind == CoordinateKind.LINE and spec.d != 1:
        problems['kind'] = 'line grids are one-dimensional'
    if spec.kind == CoordinateKind.LOG_RADIUS and 'extent' not in problems:
        if spec.t_min is None or not spec.t_min < spec.t_max:
            problems['t_min'] = spec.t_min
    if problems:
        raise WeakCouplingError('INVALID_GRID', **problems)


def _trapezoid(nodes: np.ndarray) -> np.ndarray:
    h = np.diff(nodes)
    tw = np.zeros_like(nodes)
    tw[:-1] += 0.5 * h
    tw[1:] += 0.5 * h
    return tw


def build_grid(spec: GridSpec) -> Grid:
    """
    Build the nodes, weights and difference data for spec.

    Line grids with an even node count get one extra node so that x = 0
    is a node.
    """
    from weakcoupling.closed_forms import omega

    _validate(spec)
    d = int(spec.d)
    om = omega(d)

    if spec.kind == CoordinateKind.LINE:
        n = spec.n + 1 if spec.n % 2 == 0 else spec.n
        nodes = np.linspace(-spec.extent, spec.extent, n)
        nodes[n // 2] = 0.0
        weights = _trapezoid(nodes)
        free = np.ones(n, dtype=bool)
        free[[0, -1]] = False
        origin = n // 2
    elif spec.kind == CoordinateKind.RADIAL:
        n = spec.n
        nodes = np.linspace(0.0, spec.extent, n)
        weights = om * nodes ** (d - 1) * _trapezoid(nodes)
        free = np.ones(n, dtype=bool)
        free[-1] = False
        origin = 0
    else:
        n = spec.n
        nodes = np.linspace(spec.t_min, spec.t_max, n)
        weights = om * np.exp(d * nodes) * _trapezoid(nodes)
        # The first node stands in for the whole inner ball r < e^{t_min}
        weights[0] += om * math.exp(d * spec.t_min) / d
        free = np.ones(n, dtype=bool)
        free[-1] = False
        origin = 0

    if n != spec.n:
        logger.debug("grid.line_bumped", extra={'requested': spec.n, 'nodes': n})
        spec = spec.with_extent(spec.extent, n=n)

    free.setflags(write=False)
    return Grid(
        spec=spec,
        nodes=frozen_array(nodes),
        weights=frozen_array(weights),
        midpoints=frozen_array(0.5 * (nodes[1:] + nodes[:-1])),
        inv_spacing=frozen_array(1.0 / np.diff(nodes)),
        free=free,
        origin=origin,
        omega=om,
    )


def values_on(grid: Grid, samples) -> np.ndarray:
    values = samples.values if isinstance(samples, Field) else np.asarray(samples, dtype=float)
    if values.shape != (grid.size,):
        raise WeakCouplingError('SHAPE_MISMATCH', expected=grid.size, got=int(np.size(values)))
    return values


def quadrature(grid: Grid, samples) -> float:
    """Sum of w_i f_i."""
    return float(grid.weights @ values_on(grid, samples))


def differences(grid: Grid, samples) -> np.ndarray:
    """Signed staggered differences (u_{i+1} - u_i) / (x_{i+1} - x_i)."""
    return np.diff(values_on(grid, samples)) * grid.inv_spacing


def gradient_magnitudes(grid: Grid, field) -> np.ndarray:
    """|u_{i+1} - u_i| / (x_{i+1} - x_i) at the N - 1 cell midpoints."""
    return np.abs(differences(grid, field))


def domain_measure(grid: Grid) -> float:
    """Continuum measure of the truncated domain (2L, omega L^d / d)."""
    if grid.kind == CoordinateKind.LINE:
        return 2.0 * grid.extent
    return grid.omega * grid.extent ** grid.d / grid.d


def grow(grid: Grid, fraction: float = 0.25) -> Grid | None:
    """
    Next grid of an adaptive domain sequence at the same spacing.

    Line and radial grids double L (N -> 2N - 1). Log-radius grids add
    fraction of the current t-span, and return None once d * t_max
    would exceed EXPONENT_GUARD.
    """
    spec = grid.spec
    if grid.kind != CoordinateKind.LOG_RADIUS:
        return build_grid(spec.with_extent(2.0 * spec.extent, n=2 * grid.size - 1))
    dt = (spec.t_max - spec.t_min) / (grid.size - 1)
    extra = max(1, math.ceil(fraction * (grid.size - 1)))
    t_max = spec.t_max + extra * dt
    if grid.d * t_max > weakcoupling_settings.EXPONENT_GUARD:
        return None
    return build_grid(spec.with_extent(math.exp(t_max), n=grid.size + extra))


def embed(field: Field, target: Grid) -> Field:
    """
    Carry a field onto a grown grid.

    Nested grids (same spacing, same inner end) take the values unchanged
    and zeros elsewhere; other grids interpolate in the grid coordinate.
    """
    source = field.grid
    if source.kind == target.kind and target.size >= source.size:
        offset = (target.size - source.size) // 2 if source.kind == CoordinateKind.LINE else 0
        window = target.nodes[offset:offset + source.size]
        if np.allclose(window, source.nodes, rtol=1e-12, atol=1e-12 * max(1.0, float(np.max(np.abs(source.nodes))))):
            values = np.zeros(target.size)
            values[offset:offset + source.size] = field.values
            return Field(target, values)
    return Field(target, resample(field, target))


def resample(field: Field, target: Grid) -> np.ndarray:
    """Linear interpolation of field onto target's nodes, zero outside."""
    source = field.grid
    if source.kind == CoordinateKind.LINE and target.kind == CoordinateKind.LINE:
        return np.interp(target.nodes, source.nodes, field.values, left=0.0, right=0.0)
    # Radial profiles: interpolate in r, constant inside the innermost node
    r_source = source.radii if source.kind != CoordinateKind.LINE else source.nodes[source.origin:]
    v_source = field.values if source.kind != CoordinateKind.LINE else field.values[source.origin:]
    return np.interp(target.radii, r_source, v_source, right=0.0)


def dilate(grid: Grid, factor: float) -> Grid:
    """Same node count, every radius multiplied by factor."""
    spec = grid.spec
    if grid.kind == CoordinateKind.LOG_RADIUS:
        shift = math.log(factor)
        return build_grid(GridSpec(
            d=spec.d, kind=spec.kind, n=grid.size,
            extent=spec.extent * factor, t_min=spec.t_min + shift,
        ))
    return build_grid(spec.with_extent(spec.extent * factor, n=grid.size))
