import os
from fractions import Fraction
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv(
    'DOBINSKI_LAB_SECRET_KEY',
    'dobinski-lab-local-key-not-used-for-signing',
)

DEBUG = os.getenv('DOBINSKI_LAB_DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'rest_framework',
    'numerics',
    'expansion',
    'identity',
    'limsup',
    'gauge',
    'willow',
    'lab',
]

# Nothing is persisted: every value lives in memory.
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
}

DOBINSKI_LAB = {
    'PRECISION': 30,
    'EXPONENT_CAP': 2 ** 20,
    'MAX_STAGE': 16,
    'MEASURE_TOLERANCE': Fraction(1, 2 ** 40),
    'MAX_PRECISION_BITS': 4096,
    'DIGIT_HORIZON': 256,
    'ENUMERATION_CAP': 64,
    'MAX_TREE_NODES': 2 ** 18,
    'EQUIDISTRIBUTION_CONSTANT': 4,
    'EQUIDISTRIBUTION_SLACK': 2,
    'SEPARATION_CONSTANT': Fraction(1, 2),
    'REPORT_SCHEMA': 'dobinski-lab/1',
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': os.getenv('DOBINSKI_LAB_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        }
        for app in (
            'numerics', 'expansion', 'identity',
            'limsup', 'gauge', 'willow', 'lab',
        )
    },
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
