"""
Tests for the discrete energy functional.
"""

import numpy as np
import pytest

from weakcoupling import WeakCouplingError
from weakcoupling.closed_forms import explicit_minimizer_1d, sharp_lower_bound
from weakcoupling.models import CoordinateKind, Field, GridSpec
from weakcoupling.services.functional import (
    dirichlet_energy,
    el_residual,
    eval_Q,
    grad_Q,
    gradient_check,
    norm_p,
    normalize,
    p_norm_p,
    potential_energy,
    rayleigh,
)
from weakcoupling.services.grid import build_grid
from weakcoupling.services.potentials import point_potential, sample_potential
from weakcoupling.services.validation import smooth_field


def hat(grid):
    """1 - |x| on [-1, 1]."""
    return 1.0 - np.abs(grid.nodes)


class TestDirichletEnergy:
    """Tests for dirichlet_energy()."""

    @pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
    def test_hat_function(self, unit_line_grid, p):
        """|u'| = 1 on [-1, 1], so the energy is 2 for every p."""
        assert dirichlet_energy(unit_line_grid, hat(unit_line_grid), p) == pytest.approx(2.0, rel=1e-12)

    def test_regularized_energy_is_larger(self, unit_line_grid):
        """(g^2 + eps^2)^{p/2} >= |g|^p."""
        u = hat(unit_line_grid)

        assert dirichlet_energy(unit_line_grid, u, 1.5, epsilon=0.1) > dirichlet_energy(unit_line_grid, u, 1.5)

    def test_p_must_exceed_one(self, unit_line_grid):
        """p <= 1 is not a valid exponent."""
        with pytest.raises(WeakCouplingError) as exc:
            dirichlet_energy(unit_line_grid, hat(unit_line_grid), 1.0)

        assert exc.value.code == 'INVALID_CONFIG'


    def test_log_radius_matches_radial(self):
        """At p = d = 2 both coordinates give int |grad u|^2 = pi for u = exp(-r^2)."""
        radial = build_grid(GridSpec(d=2, kind=CoordinateKind.RADIAL, n=3001, extent=6.0))
        log_radius = build_grid(GridSpec(d=2, kind=CoordinateKind.LOG_RADIUS, n=3001, extent=6.0, t_min=-8.0))
        energies = []
        for grid in (radial, log_radius):
            u = np.exp(-grid.radii ** 2)
            u[~grid.free] = 0.0
            energies.append(dirichlet_energy(grid, u, 2.0))
            assert p_norm_p(grid, u, 2.0) == pytest.approx(np.pi / 2, rel=1e-3)

        assert energies[0] == pytest.approx(np.pi, rel=1e-3)
        assert energies[1] == pytest.approx(np.pi, rel=1e-3)
        assert energies[0] == pytest.approx(energies[1], rel=1e-3)


class TestEvalQ:
    """Tests for eval_Q() and the Rayleigh quotient."""

    def test_breakdown_is_consistent(self, line_grid, gaussian):
        """Q = kinetic - potential and rayleigh = Q / ||u||_p^p."""
        potential = sample_potential(line_grid, gaussian)
        u = np.exp(-line_grid.nodes ** 2 / 8)

        energy = eval_Q(line_grid, u, potential, 2.0)

        assert energy.q_value == pytest.approx(energy.kinetic - energy.potential_term)
        assert energy.rayleigh == pytest.approx(energy.q_value / energy.p_norm_p)
        assert energy.sup_norm == pytest.approx(1.0)

    def test_rayleigh_is_scale_invariant(self, line_grid, gaussian):
        """R[c u] = R[u] for c != 0."""
        potential = sample_potential(line_grid, gaussian)
        u = np.exp(-line_grid.nodes ** 2 / 8)

        assert rayleigh(line_grid, 7.5 * u, potential, 3.0) == pytest.approx(
            rayleigh(line_grid, u, potential, 3.0), rel=1e-12,
        )

    def test_zero_field_rayleigh_is_nan(self, line_grid):
        """The quotient is undefined on the zero field."""
        assert np.isnan(rayleigh(line_grid, np.zeros(line_grid.size), None, 2.0))

    def test_atom_term(self, line_grid):
        """A point weight contributes v |u(0)|^p."""
        potential = point_potential(line_grid, 2.0)
        u = np.exp(-np.abs(line_grid.nodes))

        assert potential_energy(line_grid, u, potential, 3.0) == pytest.approx(2.0)
        assert potential.integral == 2.0

    def test_potential_on_wrong_grid(self, line_grid, radial_grid, gaussian):
        """The potential must live on the same grid."""
        potential = sample_potential(radial_grid, gaussian)

        with pytest.raises(WeakCouplingError) as exc:
            eval_Q(line_grid, np.ones(line_grid.size), potential, 2.0)

        assert exc.value.code == 'SHAPE_MISMATCH'


class TestNorms:
    """Tests for p_norm_p(), norm_p() and normalize()."""

    def test_normalize(self, line_grid):
        """normalize gives ||u||_p = 1."""
        u = normalize(line_grid, np.exp(-line_grid.nodes ** 2), 3.0)

        assert norm_p(line_grid, u, 3.0) == pytest.approx(1.0, rel=1e-12)
        assert p_norm_p(line_grid, u, 3.0) == pytest.approx(1.0, rel=1e-12)

    def test_normalize_zero_field(self, line_grid):
        """The zero field cannot be normalized."""
        with pytest.raises(WeakCouplingError) as exc:
            normalize(line_grid, np.zeros(line_grid.size), 2.0)

        assert exc.value.code == 'NUMERICAL_FAILURE'


class TestGradQ:
    """Tests for grad_Q() and gradient_check()."""

    @pytest.mark.parametrize('p', [2.0, 3.0, 4.0])
    def test_line_matches_finite_differences(self, line_grid, gaussian, rng, p):
        """Directional derivative agrees with a central difference."""
        potential = sample_potential(line_grid, gaussian)
        u = smooth_field(line_grid, rng)
        for _ in range(5):
            direction = rng.standard_normal(line_grid.size)
            assert gradient_check(line_grid, u, potential, p, direction) < 1e-5

    def test_radial_matches_finite_differences(self, radial_grid, rng):
        """Same on a d = 2 radial grid at p = 3."""
        potential = sample_potential(radial_grid, 'gaussian:A=1.0,s=0.5')
        u = smooth_field(radial_grid, rng)

        assert gradient_check(radial_grid, u, potential, 3.0, smooth_field(radial_grid, rng)) < 1e-5

    def test_log_radius_matches_finite_differences(self, log_grid, rng):
        """Same on a log-radius grid at p = d = 2."""
        potential = sample_potential(log_grid, 'gaussian:A=1.0,s=0.5')
        u = smooth_field(log_grid, rng)

        assert gradient_check(log_grid, u, potential, 2.0, smooth_field(log_grid, rng)) < 1e-5

    def test_regularized_gradient_for_small_p(self, line_grid, gaussian, rng):
        """p < 2 is checked against the epsilon-regularized energy."""
        potential = sample_potential(line_grid, gaussian)
        u = smooth_field(line_grid, rng)

        assert gradient_check(line_grid, u, potential, 1.5, rng.standard_normal(line_grid.size), epsilon=1e-2) < 1e-5

    def test_p_two_matches_stiffness_matrix(self, unit_line_grid, radial_grid, rng):
        """At p = 2, grad_Q = 2 (D^T M D - W V) u with D the difference matrix."""
        for grid in (unit_line_grid, radial_grid):
            potential = sample_potential(grid, 'gaussian:A=1.0,s=0.5')
            u = rng.standard_normal(grid.size)
            D = np.diff(np.eye(grid.size), axis=0) * grid.inv_spacing[:, None]
            expected = 2 * D.T @ (grid.edge_measure(2.0) * (D @ u)) - 2 * grid.weights * potential.values * u
            expected[~grid.free] = 0.0

            actual = grad_Q(grid, u, potential, 2.0).values

            np.testing.assert_allclose(actual, expected, rtol=1e-10, atol=1e-10 * np.max(np.abs(expected)))

    def test_epsilon_required_below_two(self, line_grid):
        """grad_Q refuses p < 2 without regularization."""
        with pytest.raises(WeakCouplingError) as exc:
            grad_Q(line_grid, np.ones(line_grid.size), None, 1.5)

        assert exc.value.code == 'EPSILON_REQUIRED'

    def test_gradient_vanishes_on_dirichlet_nodes(self, line_grid, gaussian):
        """Pinned nodes carry no gradient."""
        potential = sample_potential(line_grid, gaussian)
        G = grad_Q(line_grid, np.exp(-line_grid.nodes ** 2), potential, 2.0)

        assert isinstance(G, Field)
        assert G.values[0] == 0.0
        assert G.values[-1] == 0.0


class TestSharpInequalities:
    """Sobolev interpolation and the sharp lower bound on arbitrary line-grid fields."""

    @staticmethod
    def random_fields(grid, rng):
        """Rough and smooth random fields, zero on the boundary."""
        for _ in range(5):
            rough = rng.random(grid.size)
            rough[~grid.free] = 0.0
            yield rough
            yield smooth_field(grid, rng)

    @pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
    def test_sobolev_interpolation(self, line_grid, rng, p):
        """||u||_inf^p <= (p/2) ||u'||_p ||u||_p^{p-1}."""
        for u in self.random_fields(line_grid, rng):
            grad_norm = dirichlet_energy(line_grid, u, p) ** (1 / p)
            rhs = p / 2 * grad_norm * norm_p(line_grid, u, p) ** (p - 1)
            assert np.max(np.abs(u)) ** p <= rhs * (1 + 1e-12)

    @pytest.mark.parametrize('p', [2.0, 3.0])
    @pytest.mark.parametrize('descriptor', ['box:A=1,R=1', 'mix:A1=2,s1=0.5,A2=0.3,s2=2'])
    def test_rayleigh_above_sharp_bound(self, line_grid, rng, p, descriptor):
        """Q_V[u] / ||u||_p^p >= E(int V_+) for every field."""
        potential = sample_potential(line_grid, descriptor)
        bound = sharp_lower_bound(1, p, potential.positive_integral)
        for u in self.random_fields(line_grid, rng):
            assert rayleigh(line_grid, u, potential, p) >= bound - 1e-12 * abs(bound)

    def test_explicit_minimizer_nearly_attains_bound(self, line_grid):
        """The point-weight minimizer sits on the bound up to discretization."""
        minimizer = explicit_minimizer_1d(1.0, 2.0)
        u = minimizer(line_grid.nodes)
        u[~line_grid.free] = 0.0

        value = rayleigh(line_grid, u, point_potential(line_grid, 1.0), 2.0)

        assert value >= sharp_lower_bound(1, 2.0, 1.0) - 1e-12
        assert value == pytest.approx(sharp_lower_bound(1, 2.0, 1.0), rel=1e-2)


class TestElResidual:
    """Tests for el_residual()."""

    def test_explicit_minimizer_is_stationary(self):
        """The 1D E(v) minimizer satisfies the discrete equation to O(h^2)."""
        grid = build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=8001, extent=40.0))
        minimizer = explicit_minimizer_1d(1.0, 2.0)
        u = minimizer(grid.nodes)
        u[~grid.free] = 0.0

        residual = el_residual(grid, u, point_potential(grid, 1.0), 2.0, -minimizer.lam)

        assert residual <= 1e-3

    def test_wrong_eigenvalue_has_large_residual(self):
        """A shifted lambda is detected."""
        grid = build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=8001, extent=40.0))
        minimizer = explicit_minimizer_1d(1.0, 2.0)
        u = minimizer(grid.nodes)

        assert el_residual(grid, u, point_potential(grid, 1.0), 2.0, 0.0) > 0.1

    def test_zero_field(self, line_grid):
        """The residual is undefined on the zero field."""
        with pytest.raises(WeakCouplingError) as exc:
            el_residual(line_grid, np.zeros(line_grid.size), None, 2.0, -1.0)

        assert exc.value.code == 'DOMAIN'
