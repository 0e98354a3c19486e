"""
Shared flags and error handling of the run commands.

Each command builds a RunConfig from its options, calls runner.run and
writes the artifact to --out (stdout when omitted). WeakCouplingError
becomes a CommandError carrying the exit status of its category.
"""

from django.core.management.base import BaseCommand, CommandError

from weakcoupling.exceptions import WeakCouplingError
from weakcoupling.models.config import RunConfig
from weakcoupling.services.runner import run, write_artifact


def float_list(text: str) -> tuple[float, ...]:
    """'0.1,0.05' -> (0.1, 0.05); an empty string is an empty list."""
    return tuple(float(item) for item in text.split(',') if item.strip())


class RunCommand(BaseCommand):
    """Base for solve, sweep, sobolev, fit and validate."""

    mode = None

    def add_arguments(self, parser):
        parser.add_argument('--d', type=int, default=1, help='Space dimension')
        parser.add_argument('--p', type=float, default=2.0, help='Exponent p > 1')
        parser.add_argument(
            '--potential',
            default='gaussian',
            help='Potential descriptor, e.g. gaussian:A=1,s=1',
        )
        parser.add_argument('--grid-n', type=int, help='Grid nodes (default from settings)')
        parser.add_argument('--grid-l', type=float, help='Initial domain extent')
        parser.add_argument('--tol', type=float, help='Euler-Lagrange residual tolerance')
        parser.add_argument('--out', help='Output file (stdout when omitted)')

    def config_options(self, options) -> dict:
        return {}

    def handle(self, *args, **options):
        try:
            config = RunConfig(
                mode=self.mode,
                d=options['d'],
                p=options['p'],
                potential=options['potential'],
                grid_n=options['grid_n'],
                grid_l=options['grid_l'],
                tol=options['tol'],
                **self.config_options(options),
            )
            outcome = run(config)
            if options['out']:
                write_artifact(outcome.artifact, options['out'])
                self.stderr.write(self.style.SUCCESS(f"{self.mode}: wrote {options['out']}"))
            else:
                self.stdout.write(outcome.artifact.decode('utf-8'), ending='')
        except WeakCouplingError as e:
            raise CommandError(f"{e.message}: {e.as_dict()['data']}", returncode=e.exit_code) from e
        if outcome.status:
            raise CommandError(f"{self.mode} finished with status {outcome.status}", returncode=outcome.status)
