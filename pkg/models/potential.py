"""
Potential: a sampled radial V on a grid, plus the descriptor it came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.grid import Grid, frozen_array

if TYPE_CHECKING:
    from weakcoupling.protocols.potential import RadialProfile


@dataclass(frozen=True)
class PotentialDescriptor:
    """
    Preset tag and named parameters, e.g. ``gaussian:A=1.0,s=1.0``.

    params keeps the preset's declaration order so canonical() is stable.
    Values are floats except for the ``file`` preset's ``path``.
    """

    tag: str
    params: tuple[tuple[str, float | str], ...] = ()

    def as_kwargs(self) -> dict[str, float | str]:
        return dict(self.params)

    def canonical(self) -> str:
        """Text form that parses back to an equal descriptor."""
        if not self.params:
            return self.tag
        pairs = ','.join(
            f"{key}={value!r}" if isinstance(value, float) else f"{key}={value}"
            for key, value in self.params
        )
        return f"{self.tag}:{pairs}"

    def __str__(self) -> str:
        return self.canonical()


@dataclass(frozen=True, eq=False)
class Potential:
    """
    V sampled on the nodes of a grid, already multiplied by the coupling.

    Attributes:
        grid: Grid the values live on
        values: V(x_i), may change sign
        descriptor: Preset the values were sampled from (None for raw arrays)
        profile: Callable profile used to resample on a grown domain
        coupling: Coupling constant alpha folded into values
        atom: Point weight at the origin node (the v|u(0)|^p term of E(v))
        integral: I_h = quadrature(values) + atom, computed on construction
    """

    grid: Grid
    values: np.ndarray
    descriptor: PotentialDescriptor | None = None
    profile: RadialProfile | None = None
    coupling: float = 1.0
    atom: float = 0.0
    integral: float = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.size,):
            raise WeakCouplingError(
                'SHAPE_MISMATCH', expected=self.grid.size, got=int(values.size),
            )
        if not np.all(np.isfinite(values)) or not np.isfinite(self.atom):
            raise WeakCouplingError('NUMERICAL_FAILURE', where='potential')
        object.__setattr__(self, 'values', frozen_array(values))
        object.__setattr__(
            self, 'integral', float(self.grid.weights @ values) + float(self.atom),
        )

    @property
    def positive_integral(self) -> float:
        """Quadrature of the positive part V_+ (atom included when positive)."""
        return float(self.grid.weights @ np.maximum(self.values, 0.0)) + max(self.atom, 0.0)

    @property
    def absolute_integral(self) -> float:
        return float(self.grid.weights @ np.abs(self.values)) + abs(self.atom)

    @property
    def sign_changing(self) -> bool:
        return bool(np.any(self.values < 0) or self.atom < 0)

    def __repr__(self) -> str:
        label = self.descriptor.canonical() if self.descriptor else 'raw'
        return f"Potential({label}, coupling={self.coupling:g}, I_h={self.integral:.6g})"
