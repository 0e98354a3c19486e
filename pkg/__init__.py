"""
Django Weakcoupling: weak-coupling ground states of the p-Laplacian.

Usage:
    from weakcoupling import lab, WeakCouplingError

    lab.sobolev_constant(1, 3)                                  # 1.5
    state = lab.solve_coupling('box:A=1,R=1', d=1, p=2, alpha=1)
    state.lam                                                   # ~ -0.4538
"""


def __getattr__(name):
    """Lazy import to avoid circular imports during app loading."""
    if name == 'lab':
        from weakcoupling.service import Lab
        return Lab
    elif name == 'WeakCouplingError':
        from weakcoupling.exceptions import WeakCouplingError
        return WeakCouplingError
    elif name == 'GridSpec':
        from weakcoupling.models.grid import GridSpec
        return GridSpec
    elif name == 'Grid':
        from weakcoupling.models.grid import Grid
        return Grid
    elif name == 'Field':
        from weakcoupling.models.grid import Field
        return Field
    elif name == 'Potential':
        from weakcoupling.models.potential import Potential
        return Potential
    elif name == 'SolverConfig':
        from weakcoupling.models.config import SolverConfig
        return SolverConfig
    elif name == 'RunConfig':
        from weakcoupling.models.config import RunConfig
        return RunConfig
    elif name == 'GroundState':
        from weakcoupling.models.results import GroundState
        return GroundState
    elif name == 'SweepResult':
        from weakcoupling.models.results import SweepResult
        return SweepResult
    elif name == 'CoordinateKind':
        from weakcoupling.models.enums import CoordinateKind
        return CoordinateKind
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    'lab',
    'WeakCouplingError',
    'GridSpec',
    'Grid',
    'Field',
    'Potential',
    'SolverConfig',
    'RunConfig',
    'GroundState',
    'SweepResult',
    'CoordinateKind',
]

__version__ = '0.1.0'
