"""
Run and solver configuration.

Defaults come from weakcoupling.conf (settings.WEAKCOUPLING), read when the
config is created, so a test overriding settings sees its own values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from weakcoupling.conf import weakcoupling_settings
from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.enums import CoordinateKind, DomainPolicy, InitKind, Regime, RunMode

# Relative epsilon levels for p < 2, scaled by max |grad u| at each stage
DEFAULT_EPSILONS = (1e-2, 1e-4, 1e-8)


def _setting(name):
    return field(default_factory=lambda: getattr(weakcoupling_settings, name))


@dataclass(frozen=True)
class SolverConfig:
    """
    Descent parameters for solve_lambda / solve_E.

    init=None picks per run: test function for p = d, Gaussian bump otherwise.
    """

    p: float
    max_iter: int = _setting('MAX_ITER')
    tol_rel: float = _setting('TOL_REL')
    tol_residual: float = _setting('TOL_RESIDUAL')
    armijo_c: float = _setting('ARMIJO_C')
    backtrack: float = _setting('BACKTRACK')
    stagnation_window: int = _setting('STAGNATION_WINDOW')
    init: InitKind | None = None
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    domain: DomainPolicy = DomainPolicy.ADAPTIVE
    tol_domain: float = _setting('TOL_DOMAIN')
    max_doublings: int = _setting('MAX_DOUBLINGS')

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """Raise INVALID_CONFIG on any out-of-range parameter."""
        problems = {}
        if not self.p > 1:
            problems['p'] = self.p
        if not 0 < self.backtrack < 1:
            problems['backtrack'] = self.backtrack
        if not 0 < self.armijo_c < 1:
            problems['armijo_c'] = self.armijo_c
        for name in ('tol_rel', 'tol_residual', 'tol_domain'):
            if not getattr(self, name) > 0:
                problems[name] = getattr(self, name)
        if self.max_iter < 1:
            problems['max_iter'] = self.max_iter
        if self.stagnation_window < 1:
            problems['stagnation_window'] = self.stagnation_window
        if self.max_doublings < 0:
            problems['max_doublings'] = self.max_doublings
        if not self.epsilons or any(not e > 0 for e in self.epsilons):
            problems['epsilons'] = self.epsilons
        if problems:
            raise WeakCouplingError('INVALID_CONFIG', **problems)

    def with_p(self, p: float) -> SolverConfig:
        return replace(self, p=float(p))

    def fixed(self) -> SolverConfig:
        return replace(self, domain=DomainPolicy.FIXED)


@dataclass(frozen=True)
class RunConfig:
    """
    One command-line run.

    alphas=None means "use the default sweep grid"; an empty tuple is an
    empty sweep.
    """

    mode: RunMode
    d: int = 1
    p: float = 2.0
    potential: str = 'gaussian'
    alphas: tuple[float, ...] | None = None
    grid_n: int | None = None
    grid_l: float | None = None
    tol: float | None = None
    fmt: str | None = None
    input_path: str | None = None
    integral: float | None = None
    numeric: bool = False
    workers: int | None = None

    def __post_init__(self):
        self.validate()

    @property
    def regime(self) -> Regime | None:
        if self.p > self.d:
            return Regime.SUBCRITICAL
        if self.p == self.d:
            return Regime.CRITICAL
        return None

    @property
    def coordinate_kind(self) -> CoordinateKind:
        """p = d selects log-radius grids for d >= 2."""
        if self.d == 1:
            return CoordinateKind.LINE
        if self.p == self.d:
            return CoordinateKind.LOG_RADIUS
        return CoordinateKind.RADIAL

    @property
    def output_format(self) -> str:
        """Sweeps default to CSV; every other mode writes JSON."""
        if self.fmt:
            return self.fmt
        return 'csv' if self.mode == RunMode.SWEEP else 'json'

    @property
    def alpha(self) -> float:
        """Single coupling for solve runs (first alpha, default 1)."""
        return self.alphas[0] if self.alphas else 1.0

    def validate(self) -> None:
        problems = {}
        if int(self.d) != self.d or self.d < 1:
            problems['d'] = self.d
        if not self.p > 1:
            problems['p'] = self.p
        if self.fmt not in (None, 'csv', 'json'):
            problems['format'] = self.fmt
        elif self.fmt == 'csv' and self.mode != RunMode.SWEEP:
            problems['format'] = f"csv output is only available for sweeps, not {self.mode}"
        if self.alphas is not None:
            if any(not a > 0 for a in self.alphas):
                problems['alphas'] = self.alphas
            elif len(set(self.alphas)) != len(self.alphas):
                problems['alphas'] = 'duplicate couplings'
        if self.grid_n is not None and self.grid_n < 2:
            problems['grid_n'] = self.grid_n
        if self.grid_l is not None and not self.grid_l > 0:
            problems['grid_l'] = self.grid_l
        if self.tol is not None and not self.tol > 0:
            problems['tol'] = self.tol
        if self.mode in (RunMode.SOBOLEV,) and not self.p > self.d:
            problems['p'] = f"sobolev constant needs p > d (p={self.p}, d={self.d})"
        if self.mode == RunMode.FIT and not self.p >= self.d:
            problems['p'] = f"fits need p >= d (p={self.p}, d={self.d})"
        if problems:
            raise WeakCouplingError('INVALID_CONFIG', **problems)

    def solver_config(self) -> SolverConfig:
        overrides = {}
        if self.tol is not None:
            overrides['tol_residual'] = self.tol
        return SolverConfig(p=self.p, **overrides)
