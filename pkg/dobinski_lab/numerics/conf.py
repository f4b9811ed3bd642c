from fractions import Fraction

from django.conf import settings
from django.test.utils import override_settings

DEFAULTS = {
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


def lab_setting(name):
    """
    Value of a lab setting.
    Project settings in `DOBINSKI_LAB` override the defaults above.
    """
    if name not in DEFAULTS:
        raise KeyError(f'Unknown lab setting `{name}`.')
    overrides = getattr(settings, 'DOBINSKI_LAB', {}) or {}
    return overrides.get(name, DEFAULTS[name])


def lab_overrides(**values):
    """Settings override replacing some `DOBINSKI_LAB` entries."""
    unknown = set(values) - set(DEFAULTS)
    if unknown:
        raise KeyError(f'Unknown lab settings {sorted(unknown)}.')
    current = getattr(settings, 'DOBINSKI_LAB', {}) or {}
    return override_settings(DOBINSKI_LAB={**current, **values})
