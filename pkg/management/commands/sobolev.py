"""
Sharp Sobolev interpolation constant S_{d,p}, p > d.

Usage:
    python manage.py sobolev --d 1 --p 3
    python manage.py sobolev --d 1 --p 3 --numeric
    python manage.py sobolev --d 2 --p 3 --grid-n 8193
"""

from weakcoupling.management.base import RunCommand
from weakcoupling.models.enums import RunMode


class Command(RunCommand):
    """Write {"S": ..., "E1": ...} with the provenance of the estimate."""

    help = 'Compute the sharp Sobolev interpolation constant'
    mode = RunMode.SOBOLEV

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--numeric',
            action='store_true',
            help='Solve E(1) numerically even where a closed form exists (d = 1)',
        )

    def config_options(self, options):
        return {'numeric': options['numeric']}
