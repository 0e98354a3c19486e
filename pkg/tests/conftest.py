"""
Pytest fixtures for Weakcoupling tests.
"""

import numpy as np
import pytest

from weakcoupling.adapters import reset_presets
from weakcoupling.closed_forms import clear_sobolev_cache
from weakcoupling.models import CoordinateKind, GridSpec
from weakcoupling.services.grid import build_grid


@pytest.fixture(autouse=True)
def fresh_registries():
    """Presets and cached constants are rebuilt for every test."""
    reset_presets()
    clear_sobolev_cache()
    yield
    reset_presets()
    clear_sobolev_cache()


@pytest.fixture
def rng():
    """Seeded generator so random directions are reproducible."""
    return np.random.default_rng(1234)


@pytest.fixture
def line_grid():
    """[-10, 10] with spacing 0.05."""
    return build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=401, extent=10.0))


@pytest.fixture
def unit_line_grid():
    """[-1, 1] with spacing 0.01."""
    return build_grid(GridSpec(d=1, kind=CoordinateKind.LINE, n=201, extent=1.0))


@pytest.fixture
def radial_grid():
    """d = 2 radial grid on [0, 5]."""
    return build_grid(GridSpec(d=2, kind=CoordinateKind.RADIAL, n=201, extent=5.0))


@pytest.fixture
def log_grid():
    """d = 2 log-radius grid, t in [-5, 1]."""
    return build_grid(GridSpec(d=2, kind=CoordinateKind.LOG_RADIUS, n=601, extent=float(np.exp(1.0)), t_min=-5.0))


@pytest.fixture
def gaussian():
    """Unit-mass 1D Gaussian: I = 1."""
    return 'gaussian:A=0.3989422804014327,s=1.0'


@pytest.fixture
def potential_file(tmp_path):
    """Two-column table of a triangular bump."""
    path = tmp_path / 'bump.csv'
    path.write_text('r,V\n0,1\n1,0.5\n2,0\n')
    return path
