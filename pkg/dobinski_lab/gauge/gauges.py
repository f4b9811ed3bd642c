from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from numerics.exceptions import DomainError
from numerics.intervals import (DEFAULT_BITS, LogGaugeRadius, PowerRadius,
                                radius_bounds)
from numerics.measure import MeasureEnclosure
from numerics.scale import ScaleExponent, format_rational, parse_rational


@dataclass(frozen=True)
class Power:
    """h(r) = r^s."""
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, 's', Fraction(self.s))
        if self.s <= 0:
            raise DomainError('Gauge exponent must be positive.')

    @property
    def decreasing_ratio(self):
        """h(x)/x is non-increasing near 0."""
        return self.s <= 1

    def __str__(self):
        return f'power:{format_rational(self.s)}'


@dataclass(frozen=True)
class LogPower:
    """h(r) = 1 / (log 1/r)^s."""
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, 's', Fraction(self.s))
        if self.s <= 0:
            raise DomainError('Gauge exponent must be positive.')

    @property
    def decreasing_ratio(self):
        return True

    def __str__(self):
        return f'log:{format_rational(self.s)}'


def gauge_eval_scale(gauge, exponent):
    """
    h(2^-E): a ScaleExponent for Power gauges, a high-precision number
    1/(E ln 2)^s for LogPower gauges.
    """
    if not isinstance(exponent, ScaleExponent):
        exponent = ScaleExponent(exponent)
    if isinstance(gauge, Power):
        return exponent.scaled(gauge.s)
    if exponent.value == 0:
        raise DomainError('h(1) is infinite for logarithmic gauges.')
    with mpmath.workprec(DEFAULT_BITS):
        log_reciprocal = (mpmath.mpf(exponent.value.numerator)
                          / exponent.value.denominator * mpmath.ln2)
        power = mpmath.mpf(gauge.s.numerator) / gauge.s.denominator
        return mpmath.power(log_reciprocal, -power)


def apply_gauge(gauge, radius):
    """
    The radius h(r) as a radius kind.

    Power gauges keep 2^-E radii as exponents, raise other rationals to
    integral powers exactly and leave the rest as a PowerRadius enclosure.
    """
    if isinstance(gauge, Power):
        if isinstance(radius, Fraction):
            radius = dyadic_scale(radius)
        if isinstance(radius, ScaleExponent):
            return radius.scaled(gauge.s)
        if isinstance(radius, Fraction):
            if radius == 0:
                return radius
            if gauge.s.denominator == 1:
                return radius ** gauge.s.numerator
            return PowerRadius(radius, gauge.s)
        if isinstance(radius, PowerRadius):
            return apply_gauge(Power(radius.s * gauge.s), radius.base)
        raise DomainError(
            f'r^{format_rational(gauge.s)} at r = {radius} has no '
            'radius form.')
    if isinstance(radius, (LogGaugeRadius, PowerRadius)):
        raise DomainError('Logarithmic gauges do not compose.')
    return LogGaugeRadius(radius, gauge.s)


def dyadic_scale(radius):
    """2^-E as ScaleExponent(E); any other Fraction is returned unchanged."""
    denominator = radius.denominator
    if radius.numerator == 1 and (denominator & (denominator - 1)) == 0:
        return ScaleExponent(denominator.bit_length() - 1)
    return radius


def gauge_bounds(gauge, radius, bits=DEFAULT_BITS):
    """Rational lo <= h(r) <= hi."""
    return radius_bounds(apply_gauge(gauge, radius), bits)


def covering_sum(family, gauge, bits=DEFAULT_BITS):
    """Certified enclosure of the sum of h(r_i) over the family."""
    counts = Counter(member.radius for member in family.members)
    lo = hi = Fraction(0)
    for radius, count in counts.items():
        low, high = gauge_bounds(gauge, radius, bits)
        lo += count * low
        hi += count * high
    return MeasureEnclosure(lo, hi, bits)


def parse_gauge(text):
    """power:s | log:s"""
    kind, _, argument = str(text).strip().partition(':')
    if kind == 'power':
        return Power(parse_rational(argument))
    if kind == 'log':
        return LogPower(parse_rational(argument))
    raise DomainError(f'`{text}` is not a gauge.')


def gauge_log2(gauge, log2_radius):
    """log2 h(r) from log2 r < 0, both mpf."""
    s = mpmath.mpf(gauge.s.numerator) / gauge.s.denominator
    if isinstance(gauge, Power):
        return s * log2_radius
    return -s * mpmath.log(-log2_radius * mpmath.ln2, 2)
