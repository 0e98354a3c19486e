"""
Alpha-sweep of lambda(alpha V).

Usage:
    python manage.py sweep --d 1 --p 2 --alphas 0.2,0.1,0.05 --out sweep.csv
    python manage.py sweep --d 2 --p 2 --format json --workers 4
"""

from weakcoupling.management.base import RunCommand, float_list
from weakcoupling.models.enums import RunMode


class Command(RunCommand):
    """One solve per alpha; CSV rows in descending alpha."""

    help = 'Sweep lambda(alpha V) over a list of couplings'
    mode = RunMode.SWEEP

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--alphas',
            type=float_list,
            help='Comma-separated couplings (default: geometric grid for the regime)',
        )
        parser.add_argument('--format', dest='fmt', choices=['csv', 'json'], default='csv')
        parser.add_argument('--workers', type=int, help='Concurrent solves')

    def config_options(self, options):
        return {'alphas': options['alphas'], 'fmt': options['fmt'], 'workers': options['workers']}
