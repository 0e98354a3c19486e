"""
Enums for Weakcoupling models.
"""

from django.db import models
from django.utils.translation import gettext_lazy as _


class CoordinateKind(models.TextChoices):
    """
    Coordinate system of a grid.

    LINE:       symmetric interval [-L, L], measure dx (d = 1 only).
    RADIAL:     [0, L] in r, measure omega_d r^{d-1} dr; node at r = 0.
    LOG_RADIUS: t = log r on [t_min, log L], measure omega_d e^{dt} dt.
                Used for p = d, where the radial Dirichlet energy becomes a
                uniform 1D energy in t.
    """
    LINE = 'line', _('Line')
    RADIAL = 'radial', _('Radial')
    LOG_RADIUS = 'log-radius', _('Log-radius')


class Regime(models.TextChoices):
    """Relation between exponent and dimension."""
    SUBCRITICAL = 'subcritical', _('Subcritical (p > d)')
    CRITICAL = 'critical', _('Critical (p = d)')


class DomainPolicy(models.TextChoices):
    """How the solver chooses the truncation radius."""
    FIXED = 'fixed', _('Fixed')           # Solve on the grid as given
    ADAPTIVE = 'adaptive', _('Adaptive')  # Grow L until lambda stabilizes


class InitKind(models.TextChoices):
    """Initial field of the descent."""
    GAUSSIAN_BUMP = 'gaussian-bump', _('Gaussian bump')
    TEST_FUNCTION = 'test-function', _('Test function')


class RunMode(models.TextChoices):
    """Command-line run modes."""
    SOLVE = 'solve', _('Solve')
    SWEEP = 'sweep', _('Sweep')
    SOBOLEV = 'sobolev', _('Sobolev constant')
    FIT = 'fit', _('Fit')
    VALIDATE = 'validate', _('Validate')


class Quantity(models.TextChoices):
    """Sweep diagnostics with an a-priori power law in alpha."""
    GRAD_NORM = 'grad_norm', _('Gradient p-norm')
    SUP_NORM = 'sup_norm', _('Sup norm to the p')
