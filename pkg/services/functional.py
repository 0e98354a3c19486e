"""
Discrete energy functional.

    Q_V[u] = sum_e m_e |g_e|^p  -  sum_i w_i V_i |u_i|^p  -  atom |u_0|^p

with g_e the staggered differences, m_e the grid's edge measure, w_i the
nodal quadrature weights, and atom the optional point weight at the origin
node. The potential term uses the same nodal weights as I_h.

All functions are pure and accept either a Field or a raw array of nodal
values. potential=None means V = 0.
"""

import numpy as np

from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.grid import Field, Grid
from weakcoupling.models.potential import Potential
from weakcoupling.models.results import EnergyBreakdown
from weakcoupling.services.grid import differences, values_on


def _check_p(p: float) -> None:
    if not p > 1:
        raise WeakCouplingError('INVALID_CONFIG', p=p)


def _potential_arrays(grid: Grid, potential: Potential | None) -> tuple[np.ndarray | None, float]:
    if potential is None:
        return None, 0.0
    if potential.grid.size != grid.size:
        raise WeakCouplingError(
            'SHAPE_MISMATCH', expected=grid.size, got=potential.grid.size, where='potential',
        )
    return potential.values, potential.atom


def signed_power(u, q: float) -> np.ndarray:
    """sign(u) |u|^q."""
    return np.sign(u) * np.abs(u) ** q


def p_norm_p(grid: Grid, field, p: float) -> float:
    """sum_i w_i |u_i|^p."""
    u = values_on(grid, field)
    return float(grid.weights @ np.abs(u) ** p)


def norm_p(grid: Grid, field, p: float) -> float:
    """(sum_i w_i |u_i|^p)^{1/p}."""
    _check_p(p)
    return p_norm_p(grid, field, p) ** (1.0 / p)


def dirichlet_energy(grid: Grid, field, p: float, epsilon: float = 0.0) -> float:
    """
    sum_e m_e |g_e|^p.

    With epsilon > 0 returns the regularized sum_e m_e (g_e^2 + epsilon^2)^{p/2},
    whose exact gradient is the epsilon flux used by grad_Q.
    """
    _check_p(p)
    g = differences(grid, field)
    m = grid.edge_measure(p)
    if epsilon > 0:
        return float(m @ (g * g + epsilon * epsilon) ** (p / 2))
    return float(m @ np.abs(g) ** p)


def potential_energy(grid: Grid, field, potential: Potential | None, p: float) -> float:
    """sum_i w_i V_i |u_i|^p + atom |u_origin|^p."""
    values, atom = _potential_arrays(grid, potential)
    if values is None:
        return 0.0
    u = values_on(grid, field)
    term = float(grid.weights @ (values * np.abs(u) ** p))
    if atom:
        term += atom * abs(u[grid.origin]) ** p
    return term


def eval_Q(grid: Grid, field, potential: Potential | None, p: float, epsilon: float = 0.0) -> EnergyBreakdown:
    """Kinetic and potential parts of Q_V[u] with norms and Rayleigh quotient."""
    u = values_on(grid, field)
    kinetic = dirichlet_energy(grid, u, p, epsilon=epsilon)
    potential_term = potential_energy(grid, u, potential, p)
    q_value = kinetic - potential_term
    mass = p_norm_p(grid, u, p)
    return EnergyBreakdown(
        kinetic=kinetic,
        potential_term=potential_term,
        q_value=q_value,
        p_norm_p=mass,
        sup_norm=float(np.max(np.abs(u))) if u.size else 0.0,
        rayleigh=q_value / mass if mass > 0 else float('nan'),
    )


def rayleigh(grid: Grid, field, potential: Potential | None, p: float) -> float:
    """Q_V[u] / ||u||_p^p."""
    return eval_Q(grid, field, potential, p).rayleigh


def normalize(grid: Grid, field, p: float) -> np.ndarray:
    """Values rescaled to ||u||_p = 1."""
    u = values_on(grid, field)
    n = norm_p(grid, u, p)
    if not n > 0 or not np.isfinite(n):
        raise WeakCouplingError('NUMERICAL_FAILURE', where='normalize', norm=n)
    return u / n


def _flux(grid: Grid, u: np.ndarray, p: float, epsilon: float) -> np.ndarray:
    g = np.diff(u) * grid.inv_spacing
    if epsilon > 0:
        phi = (g * g + epsilon * epsilon) ** ((p - 2) / 2) * g
    else:
        phi = signed_power(g, p - 1)
    return p * grid.edge_measure(p) * phi * grid.inv_spacing


def gradient_values(grid: Grid, u: np.ndarray, potential: Potential | None, p: float,
                    epsilon: float = 0.0) -> np.ndarray:
    """Nodal gradient of Q without the epsilon contract check. Zero at Dirichlet nodes."""
    flux = _flux(grid, u, p, epsilon)
    grad = np.zeros(grid.size)
    grad[:-1] -= flux
    grad[1:] += flux
    values, atom = _potential_arrays(grid, potential)
    if values is not None:
        grad -= p * grid.weights * values * signed_power(u, p - 1)
        if atom:
            grad[grid.origin] -= p * atom * signed_power(u[grid.origin], p - 1)
    grad[~grid.free] = 0.0
    return grad


def grad_Q(grid: Grid, field, potential: Potential | None, p: float, epsilon: float = 0.0) -> Field:
    """
    Gradient of the discrete Q_V with respect to the nodal values.

    Raises:
        WeakCouplingError: EPSILON_REQUIRED if p < 2 and epsilon == 0
    """
    _check_p(p)
    if p < 2 and not epsilon > 0:
        raise WeakCouplingError('EPSILON_REQUIRED', p=p, epsilon=epsilon)
    u = values_on(grid, field)
    return Field(grid, gradient_values(grid, u, potential, p, epsilon=epsilon))


def el_residual(grid: Grid, field, potential: Potential | None, p: float, lam: float) -> float:
    """
    Dual-norm Euler-Lagrange defect at interior nodes, over ||u||_p^{p-1}.

    r_i = dQ/du_i - p lam |u_i|^{p-2} u_i w_i is measured as
    (sum |r_i|^{p'} / w_i^{p'-1})^{1/p'}, the L^{p'} norm of the nodal
    defect density. Nodes carrying a point weight are excluded: there the
    equation is a jump condition, not a density.
    """
    _check_p(p)
    u = values_on(grid, field)
    n = norm_p(grid, u, p)
    if not n > 0:
        raise WeakCouplingError('DOMAIN', where='el_residual', reason='zero field')
    r = gradient_values(grid, u, potential, p) - p * lam * signed_power(u, p - 1) * grid.weights
    mask = grid.interior
    if potential is not None and potential.atom:
        mask = mask.copy()
        mask[grid.origin] = False
    q = p / (p - 1)
    w = grid.weights[mask]
    dual = float(np.sum(np.abs(r[mask]) ** q / w ** (q - 1))) ** (1.0 / q)
    return dual / n ** (p - 1)


def gradient_check(grid: Grid, field, potential: Potential | None, p: float, direction,
                   step: float = 1e-6, epsilon: float = 0.0) -> float:
    """
    Relative error between <grad_Q, direction> and a central difference of Q.

    The energy is epsilon-regularized consistently with the gradient.
    """
    u = values_on(grid, field)
    h = values_on(grid, direction).copy()
    h[~grid.free] = 0.0
    analytic = float(gradient_values(grid, u, potential, p, epsilon=epsilon) @ h)
    plus = eval_Q(grid, u + step * h, potential, p, epsilon=epsilon).q_value
    minus = eval_Q(grid, u - step * h, potential, p, epsilon=epsilon).q_value
    numeric = (plus - minus) / (2 * step)
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), np.finfo(float).tiny)
