"""
Weakcoupling Models.

Immutable value types shared by the services:
- GridSpec / Grid / Field: discretized radial profiles
- Potential / PotentialDescriptor: sampled V and its preset
- SolverConfig / RunConfig: descent and command-line configuration
- GroundState, SweepRecord, SweepResult, FitResult: results
"""

from weakcoupling.models.config import RunConfig, SolverConfig
from weakcoupling.models.enums import (
    CoordinateKind,
    DomainPolicy,
    InitKind,
    Quantity,
    Regime,
    RunMode,
)
from weakcoupling.models.grid import Field, Grid, GridSpec
from weakcoupling.models.potential import Potential, PotentialDescriptor
from weakcoupling.models.results import (
    AsymptoticPrediction,
    CheckResult,
    EnergyBreakdown,
    ExplicitMinimizer,
    FitResult,
    GroundState,
    SobolevEstimate,
    SweepRecord,
    SweepResult,
)

__all__ = [
    'CoordinateKind',
    'DomainPolicy',
    'InitKind',
    'Quantity',
    'Regime',
    'RunMode',
    'GridSpec',
    'Grid',
    'Field',
    'Potential',
    'PotentialDescriptor',
    'SolverConfig',
    'RunConfig',
    'EnergyBreakdown',
    'GroundState',
    'SweepRecord',
    'SweepResult',
    'FitResult',
    'AsymptoticPrediction',
    'SobolevEstimate',
    'ExplicitMinimizer',
    'CheckResult',
]
