"""
Weak-coupling fit of a sweep against the closed-form prediction.

Usage:
    python manage.py fit --d 1 --p 2 --input sweep.csv
    python manage.py fit --d 2 --p 2 --alphas 0.8,0.4,0.2,0.1,0.05
"""

from weakcoupling.management.base import RunCommand, float_list
from weakcoupling.models.enums import RunMode


class Command(RunCommand):
    """Fit a sweep read from --input, or run one first when no input is given."""

    help = 'Extrapolate a sweep to alpha -> 0 and compare with the prediction'
    mode = RunMode.FIT

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--input', dest='input_path', help='Sweep artifact (.csv or .json)')
        parser.add_argument('--alphas', type=float_list, help='Couplings when no --input is given')
        parser.add_argument('--integral', type=float, help='Potential integral I_h (default: recomputed)')
        parser.add_argument('--workers', type=int, help='Concurrent solves')
        parser.add_argument('--format', dest='fmt', choices=['csv', 'json'], help='Artifact format (json; csv is sweep-only)')

    def config_options(self, options):
        return {
            'input_path': options['input_path'],
            'alphas': options['alphas'],
            'integral': options['integral'],
            'workers': options['workers'],
            'fmt': options['fmt'],
        }
