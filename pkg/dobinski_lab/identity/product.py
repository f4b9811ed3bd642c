"""
Partial products of |tan(2^j pi x)|^(2^-j) and their tail factors.

Arguments are never reduced in floating point: the distance of T^n x to
the nearest integer is read off the digit program, so the sine of a number
2^-z with z in the millions is still computed to full relative precision.
"""
import logging
import math
from dataclasses import dataclass

import mpmath

from expansion.programs import UNBOUNDED, is_dyadic, shift, value_enclosure
from expansion.runs import integer_distance, run_length
from numerics.conf import lab_setting
from numerics.exceptions import DomainError, LabError

logger = logging.getLogger(__name__)

GUARD_BITS = 32
ORACLE_GUARD_BITS = 96


def working_bits(precision):
    """Binary precision carrying `precision` significant decimal digits."""
    return math.ceil(precision * math.log2(10)) + GUARD_BITS


@dataclass(frozen=True)
class ProductTrace:
    n: int
    partial: mpmath.mpf
    tail: mpmath.mpf
    target: mpmath.mpf
    precision: int

    @property
    def error(self):
        return abs(self.partial - self.target)


@dataclass(frozen=True)
class TailBound:
    n: int
    run_length: object
    lower: mpmath.mpf
    upper: mpmath.mpf


def _require_non_dyadic(program):
    if is_dyadic(program):
        raise DomainError(
            'The product is undefined at dyadic points: some 2^j pi x is an '
            'odd multiple of pi/2.'
        )


def _sin_pi_shifted(program, n, bits):
    """|sin(pi T^n x)| computed from the digit structure of T^n x."""
    z, low, _ = integer_distance(program, n, bits)
    mantissa = mpmath.mpf(low.numerator) / low.denominator
    return mpmath.sin(mpmath.pi * mpmath.ldexp(mantissa, -z))


def partial_product(program, n, precision=None):
    """
    Trace of stage n: the partial product through the closed form
    2^(2 - 2^-n) sin^2(pi x) / |sin(2^(n+1) pi x)|^(2^-n).
    """
    if n < 0:
        raise DomainError('Stage must be non-negative.')
    _require_non_dyadic(program)
    precision = precision or lab_setting('PRECISION')
    bits = working_bits(precision)
    with mpmath.workprec(bits):
        sin_x = _sin_pi_shifted(program, 0, bits)
        sin_tail = _sin_pi_shifted(program, n + 1, bits)
        weight = mpmath.ldexp(1, -n)
        tail = mpmath.power(sin_tail, weight)
        partial = mpmath.power(2, 2 - weight) * sin_x ** 2 / tail
        target = 4 * sin_x ** 2
    return ProductTrace(n, partial, tail, target, precision)


def identity_trace(program, stages, precision=None):
    return [partial_product(program, n, precision) for n in stages]


def _shifted_point(program, j, bits):
    tail = shift(program, j)
    try:
        point = tail.value()
    except LabError:
        point, _ = value_enclosure(tail, bits)
    return mpmath.mpf(point.numerator) / point.denominator


def direct_product(program, n, precision=None):
    """Factor-by-factor product of |tan(pi T^j x)|^(2^-j), j = 0..n."""
    _require_non_dyadic(program)
    precision = precision or lab_setting('PRECISION')
    bits = working_bits(precision) + ORACLE_GUARD_BITS
    with mpmath.workprec(bits):
        product = mpmath.mpf(1)
        for j in range(n + 1):
            point = _shifted_point(program, j, bits)
            factor = abs(mpmath.tan(mpmath.pi * point))
            product *= mpmath.power(factor, mpmath.ldexp(1, -j))
    return product


def tail_factor_bound(program, n):
    """
    lower <= |sin(2^(n+1) pi x)|^(2^-n) <= upper from z = z_{n+1}:
    2^-z <= |sin(pi d)| <= pi 2^-z for d = dist(T^(n+1) x, Z).
    """
    if n < 0:
        raise DomainError('Stage must be non-negative.')
    z = run_length(program, n + 1)
    with mpmath.workprec(64):
        if z == UNBOUNDED:
            return TailBound(n, z, mpmath.mpf(0), mpmath.mpf(0))
        weight = mpmath.ldexp(1, -n)
        slack = mpmath.ldexp(1, -50)
        log_upper = weight * (mpmath.log(mpmath.pi) - z * mpmath.ln2)
        upper = min(mpmath.mpf(1), mpmath.exp(log_upper) * (1 + slack))
        lower = mpmath.exp(-z * weight * mpmath.ln2) * (1 - slack)
    logger.debug('Tail bound at n=%s: z=%s upper=%s', n, z, upper)
    return TailBound(n, z, lower, upper)
