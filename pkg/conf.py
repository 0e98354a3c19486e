"""
Weakcoupling configuration.

Usage in settings.py:
    WEAKCOUPLING = {
        "DEFAULT_GRID_NODES": 4096,
        "TOL_RESIDUAL": 1e-6,
        "SWEEP_WORKERS": 4,
        "POTENTIAL_PRESETS": {"ring": "myproject.potentials.RingProfile"},
    }

Outside a Django project (plain library use) the dataclass defaults apply.
"""

from dataclasses import dataclass, field
from typing import Any

from django.conf import settings


@dataclass
class WeakCouplingSettings:
    """Weakcoupling configuration settings."""

    # Smallest admissible node count for a grid
    MIN_GRID_NODES: int = 16

    # Node count used when a run does not name one
    DEFAULT_GRID_NODES: int = 4096

    # Descent iteration defaults (SolverConfig)
    MAX_ITER: int = 50000
    TOL_REL: float = 1e-10
    TOL_RESIDUAL: float = 1e-6
    ARMIJO_C: float = 1e-4
    BACKTRACK: float = 0.5

    # Iterations over which relative Rayleigh stagnation is measured
    STAGNATION_WINDOW: int = 50

    # Adaptive domain: relative lambda change under L-doubling, max doublings
    TOL_DOMAIN: float = 1e-4
    MAX_DOUBLINGS: int = 6

    # p=d runs: largest admissible d*T (e^{dT} overflow guard)
    EXPONENT_GUARD: float = 600.0

    # Concurrent solves in a sweep (1 = sequential)
    SWEEP_WORKERS: int = 1

    # Grid used for the numerically computed E(1) when d >= 2
    SOBOLEV_GRID_NODES: int = 8192

    # Extra potential presets: tag -> dotted path of a RadialProfile class
    POTENTIAL_PRESETS: dict[str, str] = field(default_factory=dict)


def get_weakcoupling_settings() -> WeakCouplingSettings:
    """Load settings from Django settings (defaults when unconfigured)."""
    if not settings.configured:
        return WeakCouplingSettings()
    user_settings: dict[str, Any] = getattr(settings, "WEAKCOUPLING", {})
    return WeakCouplingSettings(**{
        k: v for k, v in user_settings.items()
        if k in WeakCouplingSettings.__dataclass_fields__
    })


class _LazySettings:
    """Lazy proxy that re-reads settings on every attribute access."""

    def __getattr__(self, name):
        return getattr(get_weakcoupling_settings(), name)


weakcoupling_settings = _LazySettings()
