"""
Tests for grid construction and quadrature.
"""

import math

import numpy as np
import pytest

from weakcoupling import WeakCouplingError
from weakcoupling.closed_forms import omega
from weakcoupling.models import CoordinateKind, Field, GridSpec
from weakcoupling.services.grid import (
    build_grid,
    differences,
    dilate,
    domain_measure,
    embed,
    gradient_magnitudes,
    grow,
    quadrature,
    resample,
    values_on,
)


class TestBuildGrid:
    """Tests for build_grid()."""

    def test_line_grid_is_symmetric(self, line_grid):
        """Line grids are symmetric with a node at x = 0."""
        assert line_grid.size == 401
        assert line_grid.nodes[line_grid.origin] == 0.0
        np.testing.assert_allclose(line_grid.nodes, -line_grid.nodes[::-1], atol=1e-12)

    def test_line_grid_even_count_bumped(self):
        """An even node count gets one more node so the origin is a node."""
        grid = build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=400, extent=10.0))

        assert grid.size == 401
        assert grid.spec.n == 401
        assert grid.nodes[grid.origin] == 0.0

    def test_line_boundaries_are_dirichlet(self, line_grid):
        """Both ends are pinned, every other node is free."""
        assert not line_grid.free[0]
        assert not line_grid.free[-1]
        assert line_grid.free[1:-1].all()

    def test_radial_outer_boundary_only(self, radial_grid):
        """Radial grids pin r = L and leave r = 0 free."""
        assert radial_grid.free[0]
        assert not radial_grid.free[-1]
        assert radial_grid.weights[0] == 0.0

    def test_arrays_are_read_only(self, line_grid):
        """Grids are immutable once built."""
        with pytest.raises(ValueError):
            line_grid.weights[0] = 1.0

    def test_too_few_nodes(self):
        """Fewer than MIN_GRID_NODES nodes is rejected."""
        with pytest.raises(WeakCouplingError) as exc:
            build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=5, extent=1.0))

        assert exc.value.code == 'INVALID_GRID'
        assert exc.value.data['min_nodes'] == 16

    def test_min_nodes_from_settings(self, settings):
        """MIN_GRID_NODES is read from settings.WEAKCOUPLING."""
        settings.WEAKCOUPLING = {'MIN_GRID_NODES': 4}

        grid = build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=5, extent=1.0))

        assert grid.size == 5

    def test_line_grid_needs_d_one(self):
        """Line grids are one-dimensional."""
        with pytest.raises(WeakCouplingError) as exc:
            build_grid(GridSpec(d=2, kind=CoordinateKind.LINE, n=101, extent=1.0))

        assert exc.value.code == 'INVALID_GRID'

    def test_log_radius_needs_t_min(self):
        """Log-radius grids need t_min below log(extent)."""
        with pytest.raises(WeakCouplingError) as exc:
            build_grid(GridSpec(d=2, kind=CoordinateKind.LOG_RADIUS, n=101, extent=1.0))

        assert exc.value.code == 'INVALID_GRID'

    def test_nonpositive_extent(self):
        """Extent must be positive and finite."""
        with pytest.raises(WeakCouplingError) as exc:
            build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=101, extent=0.0))

        assert exc.value.code == 'INVALID_GRID'


class TestQuadrature:
    """Tests for quadrature() and the grid weights."""

    def test_line_weights_sum_to_length(self, line_grid):
        """The trapezoid weights of [-L, L] add up to 2L."""
        assert quadrature(line_grid, np.ones(line_grid.size)) == pytest.approx(20.0, rel=1e-13)

    def test_radial_2d_disc_area(self, radial_grid):
        """omega_2 r dr is linear in r, so the disc area is exact."""
        assert quadrature(radial_grid, np.ones(radial_grid.size)) == pytest.approx(math.pi * 25.0, rel=1e-12)

    def test_radial_3d_second_order(self):
        """Halving the spacing divides the ball-volume error by about four."""
        errors = []
        for n in (65, 129, 257):
            grid = build_grid(GridSpec(d=3, kind=CoordinateKind.RADIAL, n=n, extent=1.0))
            errors.append(abs(quadrature(grid, np.ones(grid.size)) - 4 * math.pi / 3))

        assert math.log2(errors[0] / errors[1]) == pytest.approx(2.0, abs=0.1)
        assert math.log2(errors[1] / errors[2]) == pytest.approx(2.0, abs=0.1)

    def test_log_radius_includes_inner_ball(self, log_grid):
        """Log-radius weights cover the whole ball of radius e^{t_max}."""
        expected = omega(2) * math.exp(2.0) / 2

        assert quadrature(log_grid, np.ones(log_grid.size)) == pytest.approx(expected, rel=1e-3)

    def test_gaussian_integral(self, line_grid):
        """The unit-mass Gaussian integrates to 1."""
        x = line_grid.nodes
        values = np.exp(-x * x / 2) / math.sqrt(2 * math.pi)

        assert quadrature(line_grid, values) == pytest.approx(1.0, rel=1e-8)

    def test_shape_mismatch(self, line_grid):
        """Samples must have one value per node."""
        with pytest.raises(WeakCouplingError) as exc:
            values_on(line_grid, np.ones(3))

        assert exc.value.code == 'SHAPE_MISMATCH'
        assert exc.value.data['expected'] == 401

    def test_domain_measure(self, line_grid, radial_grid):
        """Continuum measure of the truncated domain."""
        assert domain_measure(line_grid) == 20.0
        assert domain_measure(radial_grid) == pytest.approx(math.pi * 25.0)


class TestDifferences:
    """Tests for differences()."""

    def test_linear_field_has_constant_slope(self, line_grid):
        """u = 3x has difference quotient 3 on every cell."""
        slopes = differences(line_grid, 3.0 * line_grid.nodes)

        assert slopes.shape == (400,)
        np.testing.assert_allclose(slopes, 3.0, rtol=1e-10)

    def test_gradient_magnitudes_of_hat(self, unit_line_grid):
        """|u'| = 1 on every cell of 1 - |x|."""
        magnitudes = gradient_magnitudes(unit_line_grid, 1.0 - np.abs(unit_line_grid.nodes))

        assert magnitudes.shape == (200,)
        np.testing.assert_allclose(magnitudes, 1.0, rtol=1e-10)


class TestGrowAndEmbed:
    """Tests for the adaptive-domain helpers."""

    def test_grow_line_keeps_spacing(self, line_grid):
        """Doubling L at the same spacing gives 2N - 1 nodes."""
        bigger = grow(line_grid)

        assert bigger.extent == 20.0
        assert bigger.size == 801
        assert bigger.inv_spacing[0] == pytest.approx(line_grid.inv_spacing[0])

    def test_grow_log_radius_adds_quarter_span(self, log_grid):
        """Log-radius grids extend t_max by a quarter of the span."""
        bigger = grow(log_grid)

        assert bigger.size == 751
        assert bigger.spec.t_min == log_grid.spec.t_min
        assert math.log(bigger.extent) == pytest.approx(2.5)

    def test_grow_log_radius_guard(self, settings, log_grid):
        """Growth stops at the overflow guard."""
        settings.WEAKCOUPLING = {'EXPONENT_GUARD': 4.0}

        assert grow(log_grid) is None

    def test_embed_is_zero_padding(self, line_grid):
        """Embedding onto a grown grid keeps the values and pads with zeros."""
        field = Field(line_grid, np.exp(-line_grid.nodes ** 2))
        bigger = grow(line_grid)

        embedded = embed(field, bigger)

        assert embedded.values[200:601].tolist() == field.values.tolist()
        assert not embedded.values[:200].any()
        assert not embedded.values[601:].any()

    def test_embed_radial(self, radial_grid):
        """Radial grids share the inner end, so values land at the start."""
        field = Field(radial_grid, np.exp(-radial_grid.nodes))
        embedded = embed(field, grow(radial_grid))

        assert embedded.values[:radial_grid.size].tolist() == field.values.tolist()

    def test_resample_zero_outside(self, line_grid):
        """Resampling onto a wider grid is zero beyond the source."""
        field = Field(line_grid, np.ones(line_grid.size))
        wide = build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=101, extent=50.0))

        values = resample(field, wide)

        assert values[0] == 0.0
        assert values[wide.origin] == 1.0

    def test_dilate_scales_extent(self, radial_grid):
        """dilate multiplies every radius."""
        wide = dilate(radial_grid, 3.0)

        assert wide.size == radial_grid.size
        np.testing.assert_allclose(wide.nodes, 3.0 * radial_grid.nodes)
