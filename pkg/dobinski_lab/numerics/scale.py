import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exceptions import DomainError

GUARD_BITS = 16


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def parse_rational(text):
    """Exact rational from `p/q`, an integer or a decimal string."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f'`{text}` is not an exact rational.')


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


@dataclass(frozen=True, order=True)
class ScaleExponent:
    """
    A length r = 2**-value kept only through its exponent.
    Ordering of ScaleExponent objects follows the exponent, so a larger
    ScaleExponent is a smaller length.
    """
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if value < 0:
            raise DomainError(f'Scale exponent {value} is negative.')
        object.__setattr__(self, 'value', value)

    @property
    def is_integral(self):
        return self.value.denominator == 1

    def floor(self):
        return math.floor(self.value)

    def ceil(self):
        return math.ceil(self.value)

    def scaled(self, factor):
        return ScaleExponent(self.value * Fraction(factor))

    def length(self):
        """Exact length; only integral exponents have one."""
        if not self.is_integral:
            raise DomainError(
                f'2^-({self.value}) is irrational, use length_bounds().')
        return Fraction(1, 1 << self.value.numerator)

    def length_bounds(self, bits):
        return pow2_bounds(self.value, bits)

    def __str__(self):
        return format_rational(self.value)


def compare_scale(a, b):
    """Ordering of the lengths 2**-a and 2**-b."""
    if a.value < b.value:
        return Ordering.GREATER
    if a.value > b.value:
        return Ordering.LESS
    return Ordering.EQUAL


def mpf_to_fraction(value):
    mantissa, exponent = value.man_exp
    if exponent >= 0:
        return Fraction(int(mantissa) << exponent)
    return Fraction(int(mantissa), 1 << -exponent)


def widen(value, bits):
    """
    Rational enclosure of a positive mpf computed with relative
    error below 2**-bits.
    """
    approximation = mpf_to_fraction(value)
    slack = Fraction(1, 1 << bits)
    return approximation * (1 - slack), approximation * (1 + slack)


def pow2_bounds(exponent, bits):
    """
    Rational lo <= 2**-exponent <= hi.
    The enclosure is exact (lo == hi) for integral exponents, otherwise its
    relative width is about 2**-(bits - 1).
    """
    exponent = Fraction(exponent)
    whole = math.floor(exponent)
    fractional = exponent - whole
    if whole >= 0:
        scale = Fraction(1, 1 << whole)
    else:
        scale = Fraction(1 << -whole)
    if not fractional:
        return scale, scale
    with mpmath.workprec(bits + GUARD_BITS):
        power = mpmath.power(
            2, -mpmath.mpf(fractional.numerator) / fractional.denominator)
        lo, hi = widen(power, bits)
    return scale * lo, scale * hi
