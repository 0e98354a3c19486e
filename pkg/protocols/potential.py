"""
Radial Profile Protocol: interface for potential presets.

Weakcoupling defines this protocol; built-in presets live in
weakcoupling.adapters.presets, and projects can register more through
WEAKCOUPLING["POTENTIAL_PRESETS"].
"""

from __future__ import annotations

from typing import ClassVar, Protocol, runtime_checkable

import numpy as np


@runtime_checkable
class RadialProfile(Protocol):
    """
    Protocol for a radial potential V(|x|).

    Implementations are constructed with their named parameters as keyword
    arguments and must be cheap to call on large radius arrays.
    """

    tag: ClassVar[str]

    # (name, default) in canonical order; default None means required
    parameters: ClassVar[tuple[tuple[str, float | str | None], ...]]

    def __call__(self, r: np.ndarray) -> np.ndarray:
        """
        Sample V at radii r >= 0.

        Args:
            r: Array of radii

        Returns:
            Array of V values, same shape as r
        """
        ...

    def integral(self, d: int) -> float | None:
        """Analytic integral of V over R^d, or None when unknown or divergent."""
        ...

    def length_scale(self) -> float:
        """Smallest feature size; grids resolve it with at least four cells."""
        ...

    def support_radius(self) -> float:
        """Radius beyond which V is zero or negligible."""
        ...
