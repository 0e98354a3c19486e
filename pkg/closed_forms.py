"""
Closed forms: exact constants, explicit solutions and predicted asymptotics.

Isolated, testable, reusable: every other module checks itself against
these. Everything here is a pure function except sobolev_constant for
d >= 2, which solves E(1) numerically once per (d, p) and caches it.

Examples:
    omega(2)                          # 2 pi
    sobolev_constant(1, 3)            # 1.5
    predicted_log_rate_critical(2, 1) # 4 pi
"""

from __future__ import annotations

import logging
import math
import threading

import numpy as np
from scipy import special

from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.enums import CoordinateKind, Regime
from weakcoupling.models.grid import Field, Grid
from weakcoupling.models.potential import Potential
from weakcoupling.models.results import AsymptoticPrediction, ExplicitMinimizer, SobolevEstimate

logger = logging.getLogger('weakcoupling')


def _require(condition: bool, **data) -> None:
    if not condition:
        raise WeakCouplingError('DOMAIN', **data)


def omega(d: int) -> float:
    """Surface area 2 pi^{d/2} / Gamma(d/2) of the unit sphere in R^d."""
    _require(int(d) == d and d >= 1, d=d)
    return float(2.0 * math.pi ** (d / 2) / special.gamma(d / 2))


def hardy_constant(d: int, p: float) -> float:
    """((d - p) / p)^p, defined for d > p >= 1."""
    _require(d > p >= 1, d=d, p=p)
    return ((d - p) / p) ** p


def E_closed_1d(v: float, p: float) -> float:
    """E(v) in one dimension: -(p - 1) (v / 2)^{p / (p - 1)}."""
    _require(v > 0 and p > 1, v=v, p=p)
    return -(p - 1) * (v / 2) ** (p / (p - 1))


def E_from_sobolev(v: float, d: int, p: float, S: float) -> float:
    """-((p - d) / p) (d / p)^{d / (p - d)} (S v)^{p / (p - d)}."""
    _require(p > d and v >= 0 and S > 0, v=v, d=d, p=p, S=S)
    return -((p - d) / p) * (d / p) ** (d / (p - d)) * (S * v) ** (p / (p - d))


def sobolev_from_E(E1: float, d: int, p: float) -> float:
    """Invert E_from_sobolev at v = 1: S = |E1|^{(p-d)/p} (p/(p-d))^{(p-d)/p} (p/d)^{d/p}."""
    _require(p > d and E1 < 0, E1=E1, d=d, p=p)
    a = (p - d) / p
    return abs(E1) ** a * (p / (p - d)) ** a * (p / d) ** (d / p)


# Numerically computed S_{d,p} for d >= 2, keyed by (d, p, nodes); write-once
_sobolev_lock = threading.Lock()
_sobolev_cache: dict[tuple[int, float, int], SobolevEstimate] = {}


def sobolev_estimate(d: int, p: float, nodes: int | None = None) -> SobolevEstimate:
    """
    S_{d,p} with its provenance.

    d = 1 is the closed form p/2. d >= 2 solves E(1) on a radial grid of
    SOBOLEV_GRID_NODES nodes and inverts the E(v) identity.
    """
    _require(int(d) == d and d >= 1 and p > d, d=d, p=p)
    if d == 1:
        S = p / 2
        return SobolevEstimate(
            d=1, p=p, S=S, E1=E_from_sobolev(1.0, 1, p, S),
            nodes=0, extent=math.inf, converged=True, method='closed-form',
        )

    from weakcoupling.conf import weakcoupling_settings

    n = nodes or weakcoupling_settings.SOBOLEV_GRID_NODES
    key = (int(d), float(p), int(n))
    cached = _sobolev_cache.get(key)
    if cached is not None:
        return cached

    from weakcoupling.models.config import SolverConfig
    from weakcoupling.services.solver import solve_E

    E1, state = solve_E(1.0, d, p, SolverConfig(p=p), n=n)
    estimate = SobolevEstimate(
        d=int(d), p=float(p), S=sobolev_from_E(E1, d, p), E1=E1,
        nodes=state.grid.size, extent=state.extent, converged=state.converged,
    )
    with _sobolev_lock:
        estimate = _sobolev_cache.setdefault(key, estimate)
    logger.info("sobolev.computed", extra={
        'd': d, 'p': p, 'S': estimate.S, 'E1': estimate.E1, 'nodes': estimate.nodes,
    })
    return estimate


def sobolev_constant(d: int, p: float) -> float:
    """Sharp S_{d,p} of ||u||_inf^p <= S ||grad u||_p^d ||u||_p^{p-d}, p > d."""
    return sobolev_estimate(d, p).S


def clear_sobolev_cache() -> None:
    """Drop cached numerical constants. Useful for testing."""
    with _sobolev_lock:
        _sobolev_cache.clear()


def sharp_lower_bound(d: int, p: float, positive_integral: float, S: float | None = None) -> float:
    """
    Lower bound on Q_V[u] / ||u||_p^p in terms of the integral of V_+.

    Equals E_from_sobolev(int V_+, d, p, S); zero when V_+ vanishes.
    """
    _require(p > d and positive_integral >= 0, d=d, p=p, positive_integral=positive_integral)
    if positive_integral == 0:
        return 0.0
    S = sobolev_constant(d, p) if S is None else S
    return E_from_sobolev(positive_integral, d, p, S)


def explicit_minimizer_1d(v: float, p: float) -> ExplicitMinimizer:
    """
    u(x) = u0 exp(-kappa |x|), the normalized 1D minimizer of E(v).

    lam = (p - 1)(v/2)^{p/(p-1)} = -E(v), kappa = (lam / (p - 1))^{1/p},
    and ||u||_p^p = 2 u0^p / (p kappa) = 1 fixes u0.
    """
    _require(v > 0 and p > 1, v=v, p=p)
    lam = (p - 1) * (v / 2) ** (p / (p - 1))
    kappa = (lam / (p - 1)) ** (1.0 / p)
    amplitude = (p * kappa / 2) ** (1.0 / p)
    return ExplicitMinimizer(v=v, p=p, kappa=kappa, amplitude=amplitude, lam=lam)


def predicted_lambda_subcritical(alpha: float, d: int, p: float, I: float) -> float:
    """alpha^{p/(p-d)} E_from_sobolev(I, d, p, S_{d,p})."""
    _require(p > d, d=d, p=p)
    _require(I > 0, I=I, reason='the limit needs a positive integral')
    return alpha ** (p / (p - d)) * E_from_sobolev(I, d, p, sobolev_constant(d, p))


def predicted_log_rate_critical(d: int, I: float) -> float:
    """d omega_d^{1/(d-1)} I^{-1/(d-1)}, the limit of alpha^{1/(d-1)} log(1/|lambda|)."""
    _require(int(d) == d and d >= 2, d=d)
    _require(I > 0, I=I, reason='the limit needs a positive integral')
    return d * omega(d) ** (1.0 / (d - 1)) * I ** (-1.0 / (d - 1))


def prediction(d: int, p: float, I: float) -> AsymptoticPrediction:
    """AsymptoticPrediction for the regime selected by (d, p)."""
    if p > d:
        return AsymptoticPrediction(
            regime=Regime.SUBCRITICAL, d=d, p=p, integral=I,
            coefficient=predicted_lambda_subcritical(1.0, d, p, I),
        )
    _require(p == d, d=d, p=p, reason='no weak-coupling law for p < d')
    return AsymptoticPrediction(
        regime=Regime.CRITICAL, d=d, p=p, integral=I,
        coefficient=predicted_log_rate_critical(d, I),
    )


def capacity_annulus(rho: float, R: float, d: int) -> float:
    """p = d capacity omega_d (log(R / rho))^{1-d} of B_rho inside B_R."""
    _require(R > rho > 0, rho=rho, R=R)
    return omega(d) * math.log(R / rho) ** (1 - d)


def critical_beta(alpha: float, d: int, I: float, epsilon: float = 0.25) -> float:
    """
    Cutoff radius exp((omega_d / (alpha (1 - epsilon) I))^{1/(d-1)}).

    The critical test function with this beta has negative energy for
    alpha I small enough; epsilon trades margin against radius.
    """
    _require(int(d) == d and d >= 2 and alpha > 0 and I > 0 and 0 < epsilon < 1,
             alpha=alpha, d=d, I=I, epsilon=epsilon)
    exponent = (omega(d) / (alpha * (1 - epsilon) * I)) ** (1.0 / (d - 1))
    return math.exp(min(exponent, 700.0))


def critical_test_function(beta: float, grid: Grid) -> tuple[Field, float]:
    """
    v_beta = 1 on |x| <= 1, (1 - log|x| / log beta)_+ outside.

    Returns the sampled field and its exact p = d Dirichlet energy
    omega_d (log beta)^{1-d}.
    """
    _require(beta > 1, beta=beta)
    _require(grid.kind != CoordinateKind.LINE, kind=str(grid.kind))
    _require(grid.extent >= beta * (1 - 1e-12), extent=grid.extent, beta=beta)
    log_beta = math.log(beta)
    if grid.kind == CoordinateKind.LOG_RADIUS:
        log_r = grid.nodes
    else:
        with np.errstate(divide='ignore'):
            log_r = np.log(grid.nodes)
    values = np.clip(1.0 - np.maximum(log_r, 0.0) / log_beta, 0.0, 1.0)
    return Field(grid, values), omega(grid.d) * log_beta ** (1 - grid.d)


def scaled_test_function(phi: Field, alpha: float, p: float, d: int) -> Field:
    """
    v_alpha(x) = alpha^{d/(p(p-d))} phi(alpha^{1/(p-d)} x) on the dilated grid.

    The dilation is exact on line and radial grids, so ||v_alpha||_p equals
    ||phi||_p up to rounding.
    """
    from weakcoupling.services.grid import dilate

    _require(p > d and alpha > 0, p=p, d=d, alpha=alpha)
    grid = dilate(phi.grid, alpha ** (-1.0 / (p - d)))
    return Field(grid, alpha ** (d / (p * (p - d))) * phi.values)


def subcritical_test_bound(grid: Grid, phi: Field, potential: Potential, alpha: float,
                           p: float, d: int) -> float:
    """
    Q_{alpha V}[v_alpha] for the scaled test function built from phi.

    phi lives on grid; the potential term is evaluated on the potential's
    own grid with v_alpha interpolated there.
    """
    from weakcoupling.services.functional import dirichlet_energy
    from weakcoupling.services.grid import resample

    _require(phi.grid is grid, reason='phi must live on grid')
    v_alpha = scaled_test_function(phi, alpha, p, d)
    kinetic = dirichlet_energy(v_alpha.grid, v_alpha, p)
    sampled = resample(v_alpha, potential.grid)
    term = float(potential.grid.weights @ (potential.values * np.abs(sampled) ** p))
    if potential.atom:
        term += potential.atom * abs(sampled[potential.grid.origin]) ** p
    return kinetic - alpha * term


def second_order_coefficient_1d(grid: Grid, potential: Potential) -> float:
    """
    c = (1/4) sum_ij w_i V_i |x_i - x_j| w_j V_j on a line grid.

    For d = 1, p = 2: sqrt(-lambda(alpha V)) = alpha I / 2 - c alpha^2 + O(alpha^3).
    """
    _require(grid.kind == CoordinateKind.LINE, kind=str(grid.kind))
    wv = grid.weights * potential.values
    support = np.flatnonzero(wv)
    if support.size == 0:
        return 0.0
    x = grid.nodes[support]
    wv = wv[support]
    return 0.25 * float(wv @ np.abs(np.subtract.outer(x, x)) @ wv)


def predicted_sqrt_binding_1d(alpha: float, I: float, c: float) -> float:
    """alpha I / 2 - c alpha^2."""
    return alpha * I / 2 - c * alpha ** 2
