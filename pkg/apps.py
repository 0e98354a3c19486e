"""Django app configuration for Weakcoupling."""

from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class WeakCouplingConfig(AppConfig):
    """Configuration for Weakcoupling app."""

    name = "weakcoupling"
    verbose_name = _("Weak-coupling p-Laplacian lab")
