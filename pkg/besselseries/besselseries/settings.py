"""
Django settings for the besselseries project.

The project has no web surface and no database: it is a numerical library
packaged as a Django app, driven through the ``besselseries`` management
command. Library defaults live in the ``BESSEL_SERIES`` dict below.
"""

import math
import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

# Not used for any signing; Django only requires it to be set.
SECRET_KEY = os.getenv("SECRET_KEY", "django-insecure-besselseries-local-only")

DEBUG = os.getenv("DEBUG", "1") == "1"
ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # local apps
    'series',

    # third-party
    'rest_framework',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# Reports are written to files; nothing is persisted in a database.
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# DRF config (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    'COMPACT_JSON': False,
    'STRICT_JSON': True,
    'UNICODE_JSON': False,
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'tagged': {
            'format': '[{levelname}] {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'tagged',
        },
    },
    'loggers': {
        'series': {
            'handlers': ['console'],
            'level': os.getenv('BESSEL_SERIES_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

# Series evaluation and verification defaults.
# Every key can be overridden per run with a CLI flag or a --config file.
BESSEL_SERIES = {
    # Real grid; the negatives of these points are added automatically.
    'REAL_POINTS': [0.0, 0.5, 1.0, 2.5, math.pi, 5.0, 10.0, 17.3, 20.0],
    # (re, im) pairs
    'COMPLEX_POINTS': [(1.0, 1.0), (3.0, -2.0), (0.5, 0.5)],
    'MODULI': list(range(1, 13)),

    'TOLERANCES': {
        'theorem_real': 1e-10,
        'theorem_complex': 1e-9,
        'catalog': 1e-12,
        'structural': 1e-12,
        'periodicity': 1e-15,
        'sign_shift': 1e-13,
        'reality': 1e-13,
        'reflection': 1e-14,
        'jacobi_anger': 1e-10,
        'jacobi_anger_complex': 1e-9,
    },

    # Oracle truncation
    'TAIL_TOL': 1e-13,
    'MAX_HALF_WIDTH': 4000,

    # Jacobi-Anger partial sums run to M = ceil(|x|) + margin
    'JACOBI_ANGER_THETAS': [0.4, math.pi / 7, 2.0],
    'JACOBI_ANGER_MARGIN': 40,
    'GENERATING_FUNCTION_POINTS': [1.0, -1.0],

    'REPORT_PATH': 'verification_report.json',
}
