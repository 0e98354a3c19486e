"""
Weakcoupling Adapters: potential preset registry.

Built-in presets plus any configured in settings:

    WEAKCOUPLING = {
        "POTENTIAL_PRESETS": {"ring": "myproject.potentials.RingProfile"},
    }

Usage:
    from weakcoupling.adapters import get_preset

    profile_class = get_preset("gaussian")
    profile = profile_class(A=1.0, s=0.5)
"""

from __future__ import annotations

import logging
import threading

from django.utils.module_loading import import_string

from weakcoupling.adapters.presets import (
    BUILTIN_PRESETS,
    BoxProfile,
    GaussianProfile,
    HardyProfile,
    MixProfile,
    TabulatedProfile,
)
from weakcoupling.conf import weakcoupling_settings
from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.protocols.potential import RadialProfile

logger = logging.getLogger(__name__)


# Cached registry (built-ins + settings)
_lock = threading.Lock()
_presets: dict[str, type] | None = None


def get_presets() -> dict[str, type]:
    """
    Return the preset registry, loading configured presets on first use.

    Raises:
        WeakCouplingError: INVALID_CONFIG if a configured path cannot be imported
    """
    global _presets

    if _presets is None:
        with _lock:
            if _presets is None:  # double-checked
                registry = dict(BUILTIN_PRESETS)
                for tag, path in weakcoupling_settings.POTENTIAL_PRESETS.items():
                    try:
                        registry[tag] = import_string(path)
                    except ImportError as e:
                        raise WeakCouplingError(
                            'INVALID_CONFIG', preset=tag, path=path, reason=str(e),
                        ) from e
                    logger.debug("Loaded potential preset %s: %s", tag, path)
                _presets = registry

    return _presets


def get_preset(tag: str) -> type:
    """
    Return the profile class registered under tag.

    Raises:
        WeakCouplingError: UNKNOWN_PRESET if no preset has that tag
    """
    try:
        return get_presets()[tag]
    except KeyError:
        raise WeakCouplingError(
            'UNKNOWN_PRESET', tag=tag, known=sorted(get_presets()),
        ) from None


def build_profile(tag: str, **params) -> RadialProfile:
    profile = get_preset(tag)(**params)
    if not isinstance(profile, RadialProfile):
        raise WeakCouplingError('INVALID_CONFIG', preset=tag, reason='not a RadialProfile')
    return profile


def reset_presets() -> None:
    """Reset the cached registry. Useful for testing."""
    global _presets
    with _lock:
        _presets = None


__all__ = [
    "BoxProfile",
    "GaussianProfile",
    "HardyProfile",
    "MixProfile",
    "TabulatedProfile",
    "build_profile",
    "get_preset",
    "get_presets",
    "reset_presets",
]
