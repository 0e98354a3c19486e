"""
Django settings for the Weakcoupling test suite.
"""

SECRET_KEY = 'weakcoupling-tests'

INSTALLED_APPS = [
    'weakcoupling',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

USE_TZ = True

WEAKCOUPLING = {
    'DEFAULT_GRID_NODES': 1025,
    'SOBOLEV_GRID_NODES': 2049,
}
