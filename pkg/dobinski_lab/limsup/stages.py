import enum
import logging
from dataclasses import dataclass
from fractions import Fraction

from expansion.runs import nearest_dyadic
from gauge.gauges import apply_gauge
from numerics.conf import lab_setting
from numerics.dyadic import DyadicRational
from numerics.exceptions import DomainError, ExponentCapError
from numerics.intervals import Interval, IntervalFamily
from numerics.scale import ScaleExponent

logger = logging.getLogger(__name__)


def stage_radius(spec, n, exponent_cap=None):
    """phi(n) / 2^n as a ScaleExponent or an exact Fraction."""
    cap = exponent_cap or lab_setting('EXPONENT_CAP')
    radius = spec.phi.radius(n)
    if isinstance(radius, ScaleExponent) and radius.value > cap:
        raise ExponentCapError(
            f'Stage {n} of {spec} has radius 2^-({radius}), past the '
            f'exponent cap {cap}.',
            value=radius.value, cap=cap,
        )
    return radius


def stage_family(spec, n, exponent_cap=None, max_stage=None):
    """Balls B(j/2^n, phi(n)/2^n), j = 0..2^n."""
    if n < 1:
        raise DomainError('Stages start at n = 1.')
    max_stage = max_stage or lab_setting('MAX_STAGE')
    if n > max_stage:
        raise ExponentCapError(
            f'Stage {n} has 2^{n} + 1 members; the largest enumerable stage '
            f'is {max_stage}.',
            value=n, cap=max_stage,
        )
    radius = stage_radius(spec, n, exponent_cap)
    logger.debug('Stage %s of %s: radius %s', n, spec, radius)
    return IntervalFamily(tuple(
        Interval(DyadicRational(j, n), radius) for j in range((1 << n) + 1)
    ))


def stage_brackets(spec, n, exponent_cap=None, max_stage=None):
    """Inner and outer stage families with integral radius exponents."""
    return stage_family(spec, n, exponent_cap, max_stage).bracket()


def dilate_by_gauge(family, gauge):
    """Same centers, radii r replaced by h(r)."""
    return family.map_radius(lambda radius: apply_gauge(gauge, radius))


class Membership(enum.Enum):
    IN = 'true'
    OUT = 'false'
    UNKNOWN = 'unknown'


def _below(distance, radius):
    """distance < radius, exactly."""
    if isinstance(radius, ScaleExponent):
        p, q = radius.value.numerator, radius.value.denominator
        return (distance.numerator ** q << p) < distance.denominator ** q
    return distance < radius


def _power_below(exponent, radius):
    """2^-exponent < radius."""
    if isinstance(radius, ScaleExponent):
        return exponent > radius.value
    return radius.denominator < radius.numerator << exponent


def _power_at_least(exponent, radius):
    """2^-exponent >= radius."""
    if isinstance(radius, ScaleExponent):
        return exponent <= radius.value
    return radius.numerator << exponent <= radius.denominator


def membership_in_stage(program, spec, n):
    """
    Whether |x - P_n(x)| < phi(n)/2^n.
    UNKNOWN when the distance enclosure straddles the radius.
    """
    radius = stage_radius(spec, n)
    distance = nearest_dyadic(program, n).distance
    if distance.exact:
        return Membership.IN if _below(distance.lo, radius) else Membership.OUT
    if _power_below(distance.exponent_lo, radius):
        return Membership.IN
    if _power_at_least(distance.exponent_hi, radius):
        return Membership.OUT
    if distance.lo is not None:
        if _below(distance.hi, radius):
            return Membership.IN
        if not _below(distance.lo, radius):
            return Membership.OUT
    return Membership.UNKNOWN


def stage_measure_exponent(k, n):
    """
    |A_{n,k}| = 2^(n + 1 - 2^n/k) as a ScaleExponent, valid while the
    balls are pairwise disjoint (2^n/k >= n + 1).
    """
    exponent = Fraction(1 << n, k)
    if exponent < n + 1:
        raise DomainError(
            f'Balls of A_({n},{k}) overlap; the closed form needs '
            f'2^n/k >= n + 1.'
        )
    return ScaleExponent(exponent - n - 1)


@dataclass(frozen=True)
class TailCertificate:
    """Sum over n >= start of |A_{n,k}| is at most 2^-bound."""
    k: int
    start: int
    first_term: ScaleExponent
    bound: ScaleExponent


def borel_cantelli_tail(k, start):
    """
    Consecutive terms 2^(n + 1 - 2^n/k) shrink by 2^(1 - 2^n/k) <= 1/2
    once 2^n/k >= 2, so the tail is at most twice its first term.
    """
    if k < 1 or start < 1:
        raise DomainError('borel_cantelli_tail needs k >= 1 and start >= 1.')
    if Fraction(1 << start, k) < 2:
        raise DomainError('Terms do not halve yet; start later.')
    first = stage_measure_exponent(k, start)
    return TailCertificate(k, start, first, ScaleExponent(first.value - 1))
