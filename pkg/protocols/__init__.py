"""
Weakcoupling Protocols.

Defines interfaces for pluggable potentials.
"""

from weakcoupling.protocols.potential import RadialProfile

__all__ = [
    "RadialProfile",
]
