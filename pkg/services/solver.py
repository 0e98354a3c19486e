"""
Ground-state solver: minimizes Q_V[u] / ||u||_p^p over grid fields.

Iteration (one accepted step):
    G = grad Q - p R |u|^{p-2} u w          gradient of the Rayleigh quotient on the unit sphere
    D = P^{-1} G                            P: tridiagonal linearization of the p-Laplacian
    u <- |u - tau D|, renormalized          tau by Armijo backtracking on R

The absolute value keeps iterates nonnegative (|grad |u|| = |grad u| a.e.).
p < 2 runs a continuation over the gradient regularization epsilon; energies
are always evaluated unregularized. With the adaptive domain policy the
extent grows until lambda stops changing.

solve_E is the same descent with a point weight v at the origin node.
"""

import logging
import math

import numpy as np
from scipy import integrate, linalg

from weakcoupling.conf import weakcoupling_settings
from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.config import SolverConfig
from weakcoupling.models.enums import CoordinateKind, DomainPolicy, InitKind
from weakcoupling.models.grid import Field, Grid, GridSpec
from weakcoupling.models.potential import Potential
from weakcoupling.models.results import GroundState
from weakcoupling.protocols.potential import RadialProfile
from weakcoupling.services.functional import (
    el_residual,
    eval_Q,
    gradient_values,
    normalize,
    p_norm_p,
    rayleigh,
    signed_power,
)
from weakcoupling.services.grid import build_grid, embed, grow, values_on
from weakcoupling.services.potentials import point_potential, profile_for, resample_potential

logger = logging.getLogger('weakcoupling')

TAU_MAX = 1e2
TAU_MIN = 1e-14

# Relative change over a stagnation window below which no further progress is possible
ROUNDOFF_STAGNATION = 64 * np.finfo(float).eps


def coordinate_kind(d: int, p: float) -> CoordinateKind:
    if d == 1:
        return CoordinateKind.LINE
    if p == d:
        return CoordinateKind.LOG_RADIUS
    return CoordinateKind.RADIAL


def reference_integral(profile: RadialProfile, d: int) -> float:
    """Analytic integral of the profile, or a fine radial quadrature of it."""
    exact = profile.integral(d)
    if exact is not None:
        return float(exact)
    from weakcoupling.closed_forms import omega

    r = np.linspace(0.0, 4.0 * profile.support_radius(), 8193)
    return float(integrate.trapezoid(omega(d) * r ** (d - 1) * profile(r), r))


def plan_grid(potential, d: int, p: float, alpha: float = 1.0, n: int | None = None,
              extent: float | None = None) -> GridSpec:
    """
    Initial grid for a solve of lambda(alpha V).

    p > d: L0 = 8 alpha^{-1/(p-d)}, at least four support radii.
    p = d: log-radius, T = 1.5 (omega_d / (alpha I))^{1/(d-1)} + 10 and
        t_min = log(support) - 8.
    p < d: four support radii.
    Node count is the larger of n and what resolves the profile's length
    scale with four cells.

    Raises:
        WeakCouplingError: INVALID_CONFIG when d * T exceeds EXPONENT_GUARD
    """
    from weakcoupling.closed_forms import omega

    profile = potential if isinstance(potential, RadialProfile) else profile_for(potential)
    kind = coordinate_kind(d, p)
    requested = n or weakcoupling_settings.DEFAULT_GRID_NODES
    support = profile.support_radius()
    cell = profile.length_scale() / 4.0

    if kind == CoordinateKind.LOG_RADIUS:
        integral = alpha * reference_integral(profile, d)
        t_min = math.log(support) - 8.0
        if extent is not None:
            t_max = math.log(extent)
        elif integral > 0:
            t_max = 1.5 * (omega(d) / integral) ** (1.0 / (d - 1)) + 10.0
        else:
            t_max = math.log(support) + 10.0
        t_max = max(t_max, math.log(support) + 2.0)
        guard = weakcoupling_settings.EXPONENT_GUARD
        if d * t_max > guard:
            raise WeakCouplingError(
                'INVALID_CONFIG', alpha=alpha, d=d, t_max=t_max, guard=guard,
                reason='coupling too small for the log-radius overflow guard',
            )
        needed = math.ceil((t_max - t_min) * support / cell) + 1
        return GridSpec(d=d, kind=kind, n=max(requested, needed), extent=math.exp(t_max), t_min=t_min)

    if extent is None:
        extent = 4.0 * support
        if p > d:
            extent = max(8.0 * alpha ** (-1.0 / (p - d)), extent)
    span = 2.0 * extent if kind == CoordinateKind.LINE else extent
    needed = math.ceil(span / cell) + 1
    return GridSpec(d=d, kind=kind, n=max(requested, needed), extent=float(extent))


def gaussian_bump(grid: Grid) -> np.ndarray:
    """exp(-r^2 / 2 l^2) with l = extent / 8, zero on Dirichlet nodes."""
    width = grid.extent / 8.0
    values = np.exp(-0.5 * (grid.radii / width) ** 2)
    values[~grid.free] = 0.0
    return values


def seed_field(grid: Grid, potential: Potential, p: float) -> np.ndarray | None:
    """
    Field with provably negative energy for small couplings, or None.

    p > d: exp(-kappa r), kappa from the explicit 1D minimizer (d = 1) or
    I^{1/(p-d)}; p = d: the critical log cutoff with beta from the
    coupling. Returns None when I_h <= 0 or p < d.
    """
    from weakcoupling.closed_forms import critical_beta, critical_test_function, explicit_minimizer_1d

    integral = potential.integral
    d = grid.d
    if not integral > 0:
        return None
    if p > d:
        kappa = explicit_minimizer_1d(integral, p).kappa if d == 1 else integral ** (1.0 / (p - d))
        values = np.exp(-kappa * grid.radii)
    elif p == d and grid.kind != CoordinateKind.LINE:
        beta = min(critical_beta(1.0, d, integral), grid.extent)
        if not beta > 1:
            return None
        values = critical_test_function(beta, grid)[0].values.copy()
    else:
        return None
    values[~grid.free] = 0.0
    return values if np.any(values > 0) else None


def initial_values(grid: Grid, potential: Potential, config: SolverConfig) -> np.ndarray:
    kind = config.init
    if kind is None:
        critical = config.p == grid.d and grid.kind != CoordinateKind.LINE
        kind = InitKind.TEST_FUNCTION if critical else InitKind.GAUSSIAN_BUMP
    if kind == InitKind.TEST_FUNCTION:
        values = seed_field(grid, potential, config.p)
        if values is not None:
            return values
    return gaussian_bump(grid)


def project(grid: Grid, values, p: float) -> np.ndarray | None:
    """|values| with Dirichlet nodes zeroed, normalized to ||u||_p = 1; None if that vanishes."""
    u = np.abs(values_on(grid, values))
    u[~grid.free] = 0.0
    mass = p_norm_p(grid, u, p)
    if not (mass > 0 and math.isfinite(mass)):
        return None
    return u / mass ** (1.0 / p)


def start_field(grid: Grid, values, p: float) -> np.ndarray | None:
    """
    First iterate of a descent started from values.

    values are scaled to unit maximum and rounded to single precision before
    the p-normalization, which removes the rounding left by the scale: c u
    and u start from the same array for every c > 0.
    """
    u = np.abs(values_on(grid, values))
    u[~grid.free] = 0.0
    top = float(np.max(u)) if u.size else 0.0
    if not (top > 0 and math.isfinite(top)):
        return None
    shape = (u / top).astype(np.float32).astype(np.float64)
    return normalize(grid, shape, p)


class _Descent:
    """
    Projected descent on one fixed grid, along the preconditioned gradient.

    The step direction is P^{-1} G rather than G itself; P is symmetric
    positive definite, so P^{-1} G is still a descent direction and every
    accepted Armijo step lowers the Rayleigh quotient. The plain projected
    gradient is the fallback when the preconditioned step fails.
    """

    def __init__(self, grid: Grid, potential: Potential, config: SolverConfig):
        self.grid = grid
        self.potential = potential
        self.config = config
        self.p = config.p
        free = np.flatnonzero(grid.free)
        self.lo, self.hi = int(free[0]), int(free[-1]) + 1
        self.iterations = 0
        self.history: list[float] = []

    def rayleigh(self, u: np.ndarray) -> float:
        value = rayleigh(self.grid, u, self.potential, self.p)
        if math.isnan(value):
            raise WeakCouplingError('NUMERICAL_FAILURE', where='rayleigh', iteration=self.iterations)
        return value

    def residual(self, u: np.ndarray, lam: float) -> float:
        return el_residual(self.grid, u, self.potential, self.p, lam)

    def project(self, values: np.ndarray) -> np.ndarray | None:
        return project(self.grid, values, self.p)

    def _direction(self, u: np.ndarray, lam: float, G: np.ndarray, epsilon: float) -> np.ndarray:
        grid, p = self.grid, self.p
        g = np.diff(u) * grid.inv_spacing
        g_max = float(np.max(np.abs(g))) if g.size else 0.0
        if epsilon > 0:
            delta_g = epsilon
        else:
            delta_g = 1e-6 * g_max if g_max > 0 else 1.0
        u_max = float(np.max(u)) or 1.0
        delta_u = 1e-6 * u_max
        curvature = p * (p - 1)
        c = curvature * grid.edge_measure(p) * (g * g + delta_g ** 2) ** ((p - 2) / 2) * grid.inv_spacing ** 2
        diag = abs(lam) * curvature * (u * u + delta_u ** 2) ** ((p - 2) / 2) * grid.weights
        diag[:-1] += c
        diag[1:] += c

        lo, hi = self.lo, self.hi
        d_free = diag[lo:hi]
        # Floor scaled by the stiffness: the mass term spans hundreds of decades on log-radius grids
        stiffness = float(np.max(c)) if c.size else 0.0
        d_free = d_free + 1e-14 * (stiffness if stiffness > 0 else float(np.max(d_free)))
        banded = np.zeros((2, hi - lo))
        banded[0, 1:] = -c[lo:hi - 1]
        banded[1] = d_free
        direction = np.zeros_like(G)
        try:
            solved = linalg.solveh_banded(banded, G[lo:hi], check_finite=False)
        except (linalg.LinAlgError, ValueError):
            solved = None
        if solved is None or not np.all(np.isfinite(solved)):
            solved = G[lo:hi] / d_free
        direction[lo:hi] = solved
        return direction

    def _stagnated(self, tolerance: float) -> bool:
        window = self.config.stagnation_window
        if len(self.history) <= window:
            return False
        before, now = self.history[-window - 1], self.history[-1]
        scale = max(abs(now), abs(before), np.finfo(float).tiny)
        return (before - now) <= tolerance * scale

    def run(self, u: np.ndarray, lam: float, epsilon: float, final: bool) -> tuple[np.ndarray, float, bool]:
        """
        Iterate until stagnation (and, on the final stage, small residual).

        Returns (u, lam, stalled). stalled means the line search could not
        make progress in either the preconditioned or the steepest direction.
        """
        grid, p, config = self.grid, self.p, self.config
        tau = 1.0
        steepest = False
        while self.iterations < config.max_iter:
            G = gradient_values(grid, u, self.potential, p, epsilon=epsilon)
            G -= p * lam * signed_power(u, p - 1) * grid.weights
            G[~grid.free] = 0.0
            D = G if steepest else self._direction(u, lam, G, epsilon)
            slope = float(G @ D)
            self.iterations += 1
            if not (slope > 0 and math.isfinite(slope)):
                if steepest:
                    return u, lam, True
                steepest = True
                continue

            step = tau
            accepted = None
            while step >= TAU_MIN:
                trial = self.project(u - step * D)
                if trial is not None:
                    value = self.rayleigh(trial)
                    if value <= lam - config.armijo_c * step * slope:
                        accepted = (trial, value)
                        break
                step *= config.backtrack
            if accepted is None:
                if steepest:
                    logger.debug("solver.line_search_stalled", extra={
                        'iteration': self.iterations, 'lambda': lam,
                    })
                    return u, lam, True
                steepest = True
                continue

            steepest = False
            u, lam = accepted
            self.history.append(lam)
            tau = min(2.0 * step, TAU_MAX)

            if self._stagnated(config.tol_rel):
                if not final:
                    return u, lam, False
                if self.residual(u, lam) <= config.tol_residual:
                    return u, lam, False
                if self._stagnated(ROUNDOFF_STAGNATION):
                    return u, lam, True
        return u, lam, False


def _ground_state(grid: Grid, potential: Potential, p: float, u: np.ndarray, descent: _Descent,
                  config: SolverConfig, restarts: int = 0) -> GroundState:
    field = Field(grid, u)
    energy = eval_Q(grid, field, potential, p)
    residual = el_residual(grid, field, potential, p, energy.rayleigh)
    return GroundState(
        lam=energy.rayleigh,
        field=field,
        iterations=descent.iterations,
        residual=residual,
        converged=residual <= config.tol_residual,
        extent=grid.extent,
        energy=energy,
        p=p,
        history=tuple(descent.history),
        radial_restricted=grid.d >= 2 and potential.sign_changing,
        integral=potential.integral,
        restarts=restarts,
    )


def _solve_fixed(grid: Grid, potential: Potential, config: SolverConfig, start: np.ndarray,
                 restarts: int = 0) -> GroundState:
    p = config.p
    descent = _Descent(grid, potential, config)
    u = start_field(grid, start, p)
    if u is None:
        raise WeakCouplingError('NUMERICAL_FAILURE', where='initial field', reason='zero after projection')
    lam = descent.rayleigh(u)
    descent.history.append(lam)

    if p < 2:
        for level, relative in enumerate(config.epsilons):
            g_max = float(np.max(np.abs(np.diff(u) * grid.inv_spacing)))
            epsilon = relative * (g_max or 1.0)
            final = level == len(config.epsilons) - 1
            u, lam, stalled = descent.run(u, lam, epsilon, final)
            logger.debug("solver.epsilon_stage", extra={
                'epsilon': epsilon, 'lambda': lam, 'iterations': descent.iterations,
            })
    else:
        u, lam, stalled = descent.run(u, lam, 0.0, True)

    return _ground_state(grid, potential, p, u, descent, config, restarts=restarts)


def _needs_fallback(state: GroundState, potential: Potential, p: float) -> bool:
    return state.lam >= 0 and potential.integral > 0 and p >= state.grid.d


def _solve_with_fallback(grid: Grid, potential: Potential, config: SolverConfig,
                         start: np.ndarray, allow_fallback: bool) -> GroundState:
    state = _solve_fixed(grid, potential, config, start)
    if allow_fallback and _needs_fallback(state, potential, config.p):
        seed = seed_field(grid, potential, config.p)
        if seed is not None:
            logger.info("solver.fallback", extra={
                'lambda': state.lam, 'integral': potential.integral, 'extent': grid.extent,
            })
            retry = _solve_fixed(grid, potential, config, seed, restarts=state.restarts + 1)
            if retry.lam < state.lam:
                return retry
    return state


def solve_lambda(grid: Grid, potential: Potential, config: SolverConfig,
                 initial: Field | np.ndarray | None = None) -> GroundState:
    """
    Lowest eigenvalue lambda(V) of the p-Laplacian with potential V.

    Args:
        grid: Starting grid (the final grid may be larger, see state.extent)
        potential: V sampled on grid, coupling included
        config: Descent parameters; config.p is the exponent
        initial: Optional starting field; default follows config.init

    Returns:
        GroundState. Non-convergence is reported, not raised.

    Raises:
        WeakCouplingError: NUMERICAL_FAILURE on a NaN energy
    """
    if potential.grid.size != grid.size:
        raise WeakCouplingError('SHAPE_MISMATCH', expected=grid.size, got=potential.grid.size)
    p = config.p
    if initial is not None:
        start = values_on(grid, initial)
    else:
        start = initial_values(grid, potential, config)
    state = _solve_with_fallback(grid, potential, config, start, allow_fallback=initial is None)

    adaptive = config.domain == DomainPolicy.ADAPTIVE
    if adaptive and p < grid.d:
        logger.debug("solver.fixed_domain", extra={'reason': 'p < d', 'p': p, 'd': grid.d})
        adaptive = False
    if adaptive and potential.profile is None and potential.values.any():
        logger.warning("solver.fixed_domain", extra={'reason': 'raw potential cannot be resampled'})
        adaptive = False

    if adaptive:
        for doubling in range(config.max_doublings):
            bigger = grow(state.grid)
            if bigger is None:
                logger.info("solver.domain_guard", extra={'extent': state.extent})
                break
            grown = resample_potential(potential, bigger)
            previous = state
            state = _solve_with_fallback(
                bigger, grown, config, embed(previous.field, bigger).values, allow_fallback=True,
            )
            change = abs(state.lam - previous.lam) / max(abs(state.lam), np.finfo(float).tiny)
            logger.info("solver.domain_grown", extra={
                'doubling': doubling + 1, 'extent': state.extent, 'nodes': state.grid.size,
                'lambda': state.lam, 'change': change,
            })
            if change <= config.tol_domain:
                break

    log = logger.info if state.converged else logger.warning
    log("solver.converged" if state.converged else "solver.not_converged", extra={
        'lambda': state.lam, 'residual': state.residual, 'iterations': state.iterations,
        'extent': state.extent, 'nodes': state.grid.size,
    })
    return state


def solve_E(v: float, d: int, p: float, config: SolverConfig | None = None, n: int | None = None,
            extent: float | None = None) -> tuple[float, GroundState]:
    """
    E(v) = inf ||grad u||_p^p - v |u(0)|^p over ||u||_p = 1.

    Solved on a symmetric line grid (d = 1) or a radial grid (d >= 2) of
    initial extent 8 v^{-1/(p-d)}, with the adaptive domain policy of config.

    Raises:
        WeakCouplingError: INVALID_CONFIG if p <= d or v <= 0
    """
    if not p > d:
        raise WeakCouplingError('INVALID_CONFIG', p=p, d=d, reason='E(v) needs p > d')
    if not v > 0:
        raise WeakCouplingError('INVALID_CONFIG', v=v)
    config = config.with_p(p) if config is not None else SolverConfig(p=p)
    kind = CoordinateKind.LINE if d == 1 else CoordinateKind.RADIAL
    spec = GridSpec(
        d=d, kind=kind,
        n=n or weakcoupling_settings.DEFAULT_GRID_NODES,
        extent=extent or 8.0 * v ** (-1.0 / (p - d)),
    )
    grid = build_grid(spec)
    state = solve_lambda(grid, point_potential(grid, v), config)
    return state.lam, state


def solve_coupling(potential, d: int, p: float, alpha: float, config: SolverConfig | None = None,
                   n: int | None = None, extent: float | None = None) -> GroundState:
    """Plan a grid for alpha V, sample V on it and solve."""
    from weakcoupling.services.potentials import sample_potential

    config = config.with_p(p) if config is not None else SolverConfig(p=p)
    profile = potential if isinstance(potential, RadialProfile) else profile_for(potential)
    grid = build_grid(plan_grid(profile, d, p, alpha, n=n, extent=extent))
    sampled = sample_potential(grid, potential, alpha)
    return solve_lambda(grid, sampled, config)
