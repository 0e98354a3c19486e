"""
Result records: energies, ground states, sweeps, fits and closed-form outputs.

All records are frozen. as_dict() gives the stable JSON field names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from weakcoupling.models.enums import Regime
from weakcoupling.models.grid import Field, Grid


@dataclass(frozen=True)
class EnergyBreakdown:
    """Pieces of Q_V[u] for one field."""

    kinetic: float
    potential_term: float
    q_value: float
    p_norm_p: float
    sup_norm: float
    rayleigh: float

    def as_dict(self) -> dict:
        return {
            'kinetic': self.kinetic,
            'potential_term': self.potential_term,
            'q_value': self.q_value,
            'p_norm_p': self.p_norm_p,
            'sup_norm': self.sup_norm,
            'rayleigh': self.rayleigh,
        }


@dataclass(frozen=True, eq=False)
class GroundState:
    """
    Output of a descent: the Rayleigh minimum and its minimizer.

    Attributes:
        lam: Rayleigh quotient of field (the eigenvalue estimate)
        field: Minimizer, nonnegative, normalized to ||u||_p = 1
        iterations: Accepted plus rejected descent iterations, all stages
        residual: Euler-Lagrange residual of field at lam
        converged: residual <= tol_residual at termination
        extent: Domain extent of field.grid
        energy: EnergyBreakdown of field
        p: Exponent of the problem
        history: Rayleigh quotient after every accepted step
        radial_restricted: True when V changes sign and d >= 2
        integral: I_h of the potential the state was solved with
        restarts: Number of fallback restarts from a test function
    """

    lam: float
    field: Field
    iterations: int
    residual: float
    converged: bool
    extent: float
    energy: EnergyBreakdown
    p: float
    history: tuple[float, ...] = ()
    radial_restricted: bool = False
    integral: float = 0.0
    restarts: int = 0

    @property
    def grid(self) -> Grid:
        return self.field.grid

    @property
    def grad_norm_p(self) -> float:
        return self.energy.kinetic ** (1.0 / self.p)

    @property
    def sup_u(self) -> float:
        return self.energy.sup_norm

    def as_dict(self) -> dict:
        return {
            'lambda': self.lam,
            'residual': self.residual,
            'iterations': self.iterations,
            'converged': self.converged,
            'domain_extent': self.extent,
            'grad_norm_p': self.grad_norm_p,
            'sup_u': self.sup_u,
            'radial_restricted': self.radial_restricted,
            'integral': self.integral,
            'restarts': self.restarts,
            'grid_nodes': self.grid.size,
            'energy': self.energy.as_dict(),
        }


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sweep; field order is the CSV column order."""

    alpha: float
    lam: float
    grad_norm_p: float
    sup_u: float
    residual: float
    iterations: int
    converged: bool
    extent: float

    COLUMNS = (
        'alpha', 'lambda', 'grad_norm_p', 'sup_u',
        'residual', 'iterations', 'converged', 'domain_extent',
    )

    def as_dict(self) -> dict:
        return dict(zip(self.COLUMNS, (
            self.alpha, self.lam, self.grad_norm_p, self.sup_u,
            self.residual, self.iterations, self.converged, self.extent,
        )))

    @classmethod
    def from_dict(cls, data: dict) -> SweepRecord:
        return cls(
            alpha=float(data['alpha']),
            lam=float(data['lambda']),
            grad_norm_p=float(data['grad_norm_p']),
            sup_u=float(data['sup_u']),
            residual=float(data['residual']),
            iterations=int(data['iterations']),
            converged=bool(data['converged']),
            extent=float(data['domain_extent']),
        )


@dataclass(frozen=True, eq=False)
class SweepResult:
    """
    Records of an alpha-sweep, sorted by alpha descending.

    bounds[i] is the test-function Rayleigh quotient on the grid of
    states[i]; integrals[i] is the I_h that solve used. Sweeps re-parsed
    from CSV have no states, bounds or integrals.
    """

    d: int
    p: float
    records: tuple[SweepRecord, ...]
    descriptor: str | None = None
    bounds: tuple[float, ...] = ()
    states: tuple[GroundState, ...] = ()
    integrals: tuple[float, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([r.alpha for r in self.records], dtype=float)

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([r.lam for r in self.records], dtype=float)

    @property
    def integral(self) -> float | None:
        """I_h of the unit-coupling potential sampled at the smallest alpha."""
        if not self.integrals:
            return None
        return self.integrals[-1] / self.records[-1].alpha

    def converged(self) -> list[SweepRecord]:
        return [r for r in self.records if r.converged]


@dataclass(frozen=True)
class FitResult:
    """
    Extrapolated weak-coupling limit and its closed-form prediction.

    coefficients: subcritical (r0, c1, c2, s) of r = r0 + c1 alpha^s + c2 alpha^{2s};
    critical (g0, c1, c2) of g = g0 + c1 alpha^{1/d} + c2 alpha^{1/(d-1)}.
    method names the exponents used, e.g. "least-squares s=0.5".
    values holds the raw r(alpha) or g(alpha) sequence that was fitted.
    """

    regime: Regime
    fitted: float
    coefficients: tuple[float, ...]
    prediction: float
    relative_error: float
    alphas: tuple[float, ...]
    values: tuple[float, ...]
    method: str = 'least-squares'
    integral: float | None = None

    def as_dict(self) -> dict:
        return {
            'regime': str(self.regime),
            'fitted': self.fitted,
            'coefficients': list(self.coefficients),
            'prediction': self.prediction,
            'relative_error': self.relative_error,
            'alphas': list(self.alphas),
            'values': list(self.values),
            'method': self.method,
            'integral': self.integral,
        }


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Closed-form weak-coupling coefficient for (d, p, I)."""

    regime: Regime
    d: int
    p: float
    integral: float
    coefficient: float


@dataclass(frozen=True)
class SobolevEstimate:
    """Numerically computed S_{d,p} with the grid it came from."""

    d: int
    p: float
    S: float
    E1: float
    nodes: int
    extent: float
    converged: bool
    method: str = 'numerical'

    def as_dict(self) -> dict:
        return {
            'd': self.d, 'p': self.p, 'S': self.S, 'E1': self.E1,
            'nodes': self.nodes, 'extent': self.extent,
            'converged': self.converged, 'method': self.method,
        }


@dataclass(frozen=True)
class ExplicitMinimizer:
    """u(x) = amplitude * exp(-kappa |x|), the 1D E(v) minimizer."""

    v: float
    p: float
    kappa: float
    amplitude: float
    lam: float

    def __call__(self, x) -> np.ndarray:
        return self.amplitude * np.exp(-self.kappa * np.abs(np.asarray(x, dtype=float)))

    def derivative(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return -self.kappa * np.sign(x) * self(x)

    def first_integral(self, x) -> np.ndarray:
        """(p-1)|u'|^p - lam u^p, identically zero away from the origin."""
        return (self.p - 1) * np.abs(self.derivative(x)) ** self.p - self.lam * self(x) ** self.p


@dataclass(frozen=True)
class CheckResult:
    """One entry of the validate report."""

    name: str
    passed: bool
    value: float | None = None
    threshold: float | None = None
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            'name': self.name, 'passed': self.passed, 'value': self.value,
            'threshold': self.threshold, 'detail': self.detail,
        }
