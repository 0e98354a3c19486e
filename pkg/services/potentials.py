"""
Potential descriptors: parse, format and sample presets on grids.

Descriptor grammar: ``tag`` or ``tag:key=value,key=value``. Keys must be
declared by the preset; omitted keys take the preset default.
"""

import logging
import math
import re

import numpy as np

from weakcoupling.adapters import build_profile, get_preset
from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.grid import Grid
from weakcoupling.models.potential import Potential, PotentialDescriptor
from weakcoupling.protocols.potential import RadialProfile

logger = logging.getLogger('weakcoupling')

_TAG = re.compile(r'[A-Za-z_][\w-]*\Z')
_KEY = re.compile(r'[A-Za-z_]\w*\Z')

# Parameters taken as text rather than numbers
TEXT_PARAMETERS = frozenset({'path'})


def parse_potential(text: str) -> PotentialDescriptor:
    """
    Parse a descriptor string.

    Raises:
        WeakCouplingError: PARSE_ERROR (with character position) on a
            malformed pair, unknown or duplicate key, or missing required key;
            UNKNOWN_PRESET when the tag is not registered
    """
    source = text
    text = text.strip()
    lead = len(source) - len(source.lstrip())
    tag, sep, body = text.partition(':')
    if not _TAG.match(tag):
        raise WeakCouplingError('PARSE_ERROR', text=source, position=lead, reason='bad tag')
    try:
        preset = get_preset(tag)
    except WeakCouplingError as e:
        e.data['position'] = lead
        raise

    declared = dict(preset.parameters)
    given: dict[str, float | str] = {}
    position = lead + len(tag) + len(sep)
    if sep and not body:
        raise WeakCouplingError('PARSE_ERROR', text=source, position=position, reason='empty parameter list')

    for pair in body.split(',') if body else ():
        key, eq, raw = pair.partition('=')
        key_text = key.strip()
        if not eq or not _KEY.match(key_text):
            raise WeakCouplingError('PARSE_ERROR', text=source, position=position, reason='expected key=value')
        if key_text not in declared:
            raise WeakCouplingError(
                'PARSE_ERROR', text=source, position=position,
                reason=f"unknown parameter {key_text!r} for {tag}",
            )
        if key_text in given:
            raise WeakCouplingError(
                'PARSE_ERROR', text=source, position=position, reason=f"duplicate parameter {key_text!r}",
            )
        value_position = position + len(key) + 1
        given[key_text] = _parse_value(key_text, raw.strip(), source, value_position)
        position += len(pair) + 1

    params = []
    for name, default in preset.parameters:
        value = given.get(name, default)
        if value is None:
            raise WeakCouplingError(
                'PARSE_ERROR', text=source, position=len(source), reason=f"missing parameter {name!r}",
            )
        params.append((name, value if name in TEXT_PARAMETERS else float(value)))
    return PotentialDescriptor(tag=tag, params=tuple(params))


def _parse_value(key: str, raw: str, source: str, position: int) -> float | str:
    if key in TEXT_PARAMETERS:
        if not raw:
            raise WeakCouplingError('PARSE_ERROR', text=source, position=position, reason='empty value')
        return raw
    try:
        value = float(raw)
    except ValueError:
        raise WeakCouplingError(
            'PARSE_ERROR', text=source, position=position, reason=f"not a number: {raw!r}",
        ) from None
    if not math.isfinite(value):
        raise WeakCouplingError('PARSE_ERROR', text=source, position=position, reason='non-finite value')
    return value


def format_potential(descriptor: PotentialDescriptor) -> str:
    """Canonical text; parse_potential(format_potential(x)) == x."""
    return descriptor.canonical()


def as_descriptor(potential) -> PotentialDescriptor:
    if isinstance(potential, PotentialDescriptor):
        return potential
    return parse_potential(potential)


def profile_for(potential) -> RadialProfile:
    """Instantiate the preset profile of a descriptor (or descriptor text)."""
    descriptor = as_descriptor(potential)
    return build_profile(descriptor.tag, **descriptor.as_kwargs())


def analytic_integral(potential, d: int) -> float | None:
    """Closed-form integral of V over R^d when the preset knows it."""
    return profile_for(potential).integral(d)


def sample_potential(grid: Grid, potential, alpha: float = 1.0) -> Potential:
    """
    Sample alpha * V on the grid's radii.

    potential may be a descriptor, descriptor text or a RadialProfile.
    """
    if isinstance(potential, RadialProfile):
        profile, descriptor = potential, None
    else:
        descriptor = as_descriptor(potential)
        profile = profile_for(descriptor)
    values = alpha * np.asarray(profile(grid.radii), dtype=float)
    return Potential(grid, values, descriptor=descriptor, profile=profile, coupling=alpha)


def resample_potential(potential: Potential, grid: Grid) -> Potential:
    """Same V and coupling on another grid; point weights carry over."""
    if potential.profile is None:
        if potential.values.any():
            raise WeakCouplingError('INVALID_CONFIG', reason='raw potential cannot be resampled')
        values = np.zeros(grid.size)
    else:
        values = potential.coupling * np.asarray(potential.profile(grid.radii), dtype=float)
    return Potential(
        grid, values,
        descriptor=potential.descriptor,
        profile=potential.profile,
        coupling=potential.coupling,
        atom=potential.atom,
    )


def point_potential(grid: Grid, v: float) -> Potential:
    """V = 0 with a point weight v at the origin node: the E(v) objective."""
    return Potential(grid, np.zeros(grid.size), atom=v)


def require_positive_integral(potential: Potential, relative: float = 1e-10) -> float:
    """
    Gate for sweeps and fits: I_h must be positive.

    I_h within relative * int |V| of zero counts as zero.

    Raises:
        WeakCouplingError: NONPOSITIVE_INTEGRAL
    """
    if not potential.integral > relative * potential.absolute_integral:
        raise WeakCouplingError(
            'NONPOSITIVE_INTEGRAL',
            integral=potential.integral,
            potential=potential.descriptor.canonical() if potential.descriptor else None,
        )
    return potential.integral
