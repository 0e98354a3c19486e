"""
Console entry point.

    weakcoupling solve --d 1 --p 2 --potential box:A=1,R=1
    weakcoupling sweep --d 2 --p 2 --out sweep.csv

Inside a Django project use ``python manage.py <command>`` instead; this
script configures a minimal settings module when DJANGO_SETTINGS_MODULE
is not set.
"""

import os
import sys

import django
from django.conf import settings
from django.core.management import execute_from_command_line

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'event': {'format': '%(levelname)s %(name)s %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'event'},
    },
    'loggers': {
        'weakcoupling': {
            'handlers': ['console'],
            'level': os.environ.get('WEAKCOUPLING_LOG_LEVEL', 'WARNING'),
        },
    },
}


def configure() -> None:
    if not os.environ.get('DJANGO_SETTINGS_MODULE') and not settings.configured:
        settings.configure(
            INSTALLED_APPS=['weakcoupling'],
            LOGGING=LOGGING,
            USE_TZ=True,
        )
    django.setup()


def main(argv: list[str] | None = None) -> None:
    argv = list(sys.argv if argv is None else argv)
    configure()
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
