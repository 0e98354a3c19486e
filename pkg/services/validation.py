"""
Invariant suite behind the ``validate`` command.

Each check returns a CheckResult; none raises on a failed comparison.
All checks are small enough to run in seconds.
"""

import logging
import math

import numpy as np
from scipy import linalg, optimize

from weakcoupling.closed_forms import E_closed_1d, E_from_sobolev, omega
from weakcoupling.models.config import SolverConfig
from weakcoupling.models.enums import CoordinateKind, DomainPolicy
from weakcoupling.models.grid import GridSpec
from weakcoupling.models.results import CheckResult
from weakcoupling.services.asymptotics import bound_violations, check_monotone, sweep
from weakcoupling.services.functional import gradient_check
from weakcoupling.services.grid import build_grid, quadrature
from weakcoupling.services.potentials import sample_potential
from weakcoupling.services.solver import coordinate_kind, solve_lambda

logger = logging.getLogger('weakcoupling')

SEED = 20240601


def check_identity_chain() -> CheckResult:
    worst = 0.0
    for v in (0.25, 1.0, 2.0, 5.0):
        for p in (1.5, 2.0, 3.0, 4.0):
            a, b = E_from_sobolev(v, 1, p, p / 2), E_closed_1d(v, p)
            worst = max(worst, abs(a - b) / abs(b))
    return CheckResult('identity_chain', worst <= 1e-12, worst, 1e-12)


def smooth_field(grid, rng) -> np.ndarray:
    """Random sum of bumps, zero on Dirichlet nodes."""
    r = grid.radii
    scale = float(np.max(r)) or 1.0
    values = np.zeros(grid.size)
    for _ in range(3):
        center = rng.uniform(0.0, 0.5) * scale
        width = rng.uniform(0.1, 0.3) * scale
        values += rng.uniform(0.5, 1.5) * np.exp(-0.5 * ((r - center) / width) ** 2)
    values[~grid.free] = 0.0
    return values


def _check_grid(d: int, p: float):
    kind = coordinate_kind(d, p)
    if kind == CoordinateKind.LOG_RADIUS:
        return build_grid(GridSpec(d=d, kind=kind, n=129, extent=math.exp(2.0), t_min=-2.0))
    return build_grid(GridSpec(d=d, kind=kind, n=129, extent=4.0))


def check_gradient(directions: int = 20, tolerance: float = 1e-5) -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    cases = {}
    for d, p in ((1, 2.0), (1, 3.0), (2, 2.0), (2, 3.0)):
        grid = _check_grid(d, p)
        potential = sample_potential(grid, 'gaussian:A=1.0,s=0.5')
        u = smooth_field(grid, rng)
        errors = [
            gradient_check(grid, u, potential, p, smooth_field(grid, rng) * rng.choice([-1.0, 1.0]))
            for _ in range(directions)
        ]
        cases[f"d={d},p={p:g}"] = max(errors)
        worst = max(worst, max(errors))
    return CheckResult('gradient', worst <= tolerance, worst, tolerance, cases)


def check_quadrature_order(minimum: float = 1.9) -> CheckResult:
    errors = []
    for n in (65, 129, 257):
        grid = build_grid(GridSpec(d=3, kind=CoordinateKind.RADIAL, n=n, extent=1.0))
        errors.append(abs(quadrature(grid, np.ones(grid.size)) - omega(3) / 3))
    orders = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
    return CheckResult('quadrature_order', min(orders) >= minimum, min(orders), minimum, {'errors': errors})


def square_well_root() -> float:
    """lambda = k^2 - 1 with k tan k = sqrt(1 - k^2), the unit square well."""
    k = optimize.brentq(lambda k: k * math.tan(k) - math.sqrt(1 - k * k), 1e-6, 1 - 1e-12)
    return k * k - 1


def dense_lowest_eigenvalue(grid, potential) -> float:
    """Smallest eigenvalue of the p = 2 line-grid operator, assembled independently."""
    inner = slice(1, grid.size - 1)
    h = float(1.0 / grid.inv_spacing[0])
    diag = 2.0 / h ** 2 - potential.values[inner]
    off = -np.ones(grid.size - 3) / h ** 2
    return float(linalg.eigh_tridiagonal(diag, off, select='i', select_range=(0, 0), eigvals_only=True)[0])


def check_linear_oracle(n: int = 2401, tolerance: float = 5e-3) -> CheckResult:
    # n = 2401 on [-12, 12] puts the well edges on nodes
    grid = build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=n, extent=12.0))
    potential = sample_potential(grid, 'box:A=1.0,R=1.0')
    state = solve_lambda(grid, potential, SolverConfig(p=2.0, domain=DomainPolicy.FIXED))
    dense = dense_lowest_eigenvalue(grid, potential)
    root = square_well_root()
    worst = max(abs(state.lam - dense) / abs(dense), abs(state.lam - root) / abs(root))
    return CheckResult('linear_oracle', worst <= tolerance, worst, tolerance, {
        'lambda': state.lam, 'dense': dense, 'transcendental': root,
    })


def check_monotonicity(slack: float = 1e-10) -> CheckResult:
    result = sweep('gaussian:A=0.3989422804014327,s=1.0', 1, 2.0, (0.4, 0.2, 0.1))
    violations = check_monotone(result, slack)
    above = bound_violations(result)
    return CheckResult('monotonicity', not violations and not above, float(len(violations) + len(above)), 0.0, {
        'monotone_violations': violations, 'bound_violations': above,
    })


CHECKS = (
    check_identity_chain,
    check_gradient,
    check_quadrature_order,
    check_linear_oracle,
    check_monotonicity,
)


def run_validation() -> list[CheckResult]:
    results = []
    for check in CHECKS:
        result = check()
        log = logger.info if result.passed else logger.warning
        log("validate.check", extra={'check': result.name, 'passed': result.passed, 'value': result.value})
        results.append(result)
    return results
