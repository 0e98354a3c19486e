"""
Quick invariant suite.

Usage:
    python manage.py validate
    python manage.py validate --out report.json
"""

from weakcoupling.management.base import RunCommand
from weakcoupling.models.enums import RunMode


class Command(RunCommand):
    """JSON report of every check; exit status 3 if any check fails."""

    help = 'Run the invariant checks and write a JSON report'
    mode = RunMode.VALIDATE
