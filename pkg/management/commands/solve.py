"""
Lowest eigenvalue for one coupling.

Usage:
    python manage.py solve --d 1 --p 2 --potential box:A=1,R=1 --alpha 1
"""

from weakcoupling.management.base import RunCommand
from weakcoupling.models.enums import RunMode


class Command(RunCommand):
    """Solve lambda(alpha V) and write a JSON GroundState summary."""

    help = 'Solve the ground state of the p-Laplacian with potential alpha V'
    mode = RunMode.SOLVE

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--alpha', type=float, default=1.0, help='Coupling constant')
        parser.add_argument('--format', dest='fmt', choices=['csv', 'json'], help='Artifact format (json; csv is sweep-only)')

    def config_options(self, options):
        return {'alphas': (options['alpha'],), 'fmt': options['fmt']}
