import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from numerics.conf import lab_setting
from numerics.dyadic import DyadicRational
from numerics.exceptions import DomainError

from .programs import (UNBOUNDED, EventuallyPeriodic, Finite, RunSchedule,
                       is_dyadic)

logger = logging.getLogger(__name__)


def run_length(program, n):
    """z_n: length of the constant block starting at position n + 1."""
    if n < 0:
        raise DomainError('Run length index must be non-negative.')
    return program.constant_run(n + 1)


@dataclass(frozen=True)
class RunProfile:
    entries: tuple

    @property
    def unbounded_from(self):
        """First n with z_n unbounded, or None."""
        for n, z in self.entries:
            if z == UNBOUNDED:
                return n
        return None


def run_profile(program, count):
    return RunProfile(tuple(
        (n, run_length(program, n)) for n in range(1, count + 1)
    ))


def partial_sum(program, n):
    """S_n(x) = sum of e_j 2^-j for j <= n."""
    if n == 0:
        return DyadicRational(0)
    bits = ''.join(map(str, program.digits_between(1, n)))
    return DyadicRational(int(bits, 2), n)


@dataclass(frozen=True)
class DistanceEnclosure:
    """
    |x - P_n(x)| with 2^-exponent_hi <= d <= 2^-exponent_lo.
    `lo` and `hi` are rational bounds when they are affordable.
    """
    exponent_lo: object
    exponent_hi: object
    lo: Fraction = None
    hi: Fraction = None

    @property
    def exact(self):
        return self.lo is not None and self.lo == self.hi

    @property
    def value(self):
        if not self.exact:
            raise DomainError('Distance is only known as an enclosure.')
        return self.lo


@dataclass(frozen=True)
class NearestDyadic:
    n: int
    point: DyadicRational
    distance: DistanceEnclosure
    run_length: object


def _zero_distance():
    return DistanceEnclosure(UNBOUNDED, UNBOUNDED, Fraction(0), Fraction(0))


def _has_exact_value(program):
    if isinstance(program, (Finite, EventuallyPeriodic)):
        return True
    horizon = lab_setting('DIGIT_HORIZON')
    return program.explicit and program.last_position <= horizon


def nearest_dyadic(program, n, horizon=None):
    """
    P_n(x), the closest point of 2^-n Z to x, and the distance to it.
    Distances are exact for rational programs; generated schedules get
    the run-length sandwich refined from `horizon` digits.
    """
    if n < 1:
        raise DomainError('nearest_dyadic needs n >= 1.')
    z = run_length(program, n)
    next_digit = program.digits_between(n + 1, n + 1)[0]
    point = partial_sum(program, n)
    if next_digit:
        point = point + DyadicRational.power_of_two(n)
    if z == UNBOUNDED:
        return NearestDyadic(n, point, _zero_distance(), z)
    exponent_lo, exponent_hi = n + z, n + z + 1
    if _has_exact_value(program):
        distance = abs(program.value() - point.to_fraction())
        return NearestDyadic(
            n, point,
            DistanceEnclosure(exponent_lo, exponent_hi, distance, distance),
            z,
        )
    horizon = horizon or lab_setting('DIGIT_HORIZON')
    if exponent_hi > horizon:
        logger.debug('Distance at n=%s kept in exponent space (z=%s)', n, z)
        return NearestDyadic(
            n, point, DistanceEnclosure(exponent_lo, exponent_hi), z)
    low = partial_sum(program, horizon).to_fraction()
    high = low + Fraction(1, 1 << horizon)
    target = point.to_fraction()
    if next_digit:
        lo, hi = target - high, target - low
    else:
        lo, hi = low - target, high - target
    lo = max(lo, Fraction(1, 1 << exponent_hi))
    hi = min(hi, Fraction(1, 1 << exponent_lo))
    return NearestDyadic(
        n, point, DistanceEnclosure(exponent_lo, exponent_hi, lo, hi), z)


def integer_distance(program, n, bits):
    """
    dist(T^n x, Z) = 2^-z * m with z = z_n and m in [1/2, 1].
    Returns (z, m_lo, m_hi) with m known to `bits` binary places, read from
    the digits after the leading block (complemented when it is a block of
    ones). Unbounded z means T^n x is an integer.
    """
    z = program.constant_run(n + 1)
    if z == UNBOUNDED:
        return z, None, None
    lead = program.digits_between(n + 1, n + 1)[0]
    tail = program.digits_between(n + z + 1, n + z + bits)
    mantissa = int(''.join(str(digit ^ lead) for digit in tail), 2)
    low = Fraction(mantissa, 1 << bits)
    return z, low, low + Fraction(1, 1 << bits)


class Verdict(enum.Enum):
    IN_D = 'InD'
    NOT_IN_D = 'NotInD'
    UNKNOWN = 'UnknownBeyondHorizon'


@dataclass(frozen=True)
class MembershipVerdict:
    verdict: Verdict
    k: int = None
    limsup: object = None
    horizon: int = None
    reason: str = ''


def classify_membership(program):
    """
    Symbolic limsup of z_n / 2^n and the smallest k with x in D(k).
    Only rational programs and generated schedules can be decided.
    """
    if is_dyadic(program):
        return MembershipVerdict(
            Verdict.IN_D, k=1, limsup=UNBOUNDED,
            reason='dyadic rational: z_n is unbounded from some n on',
        )
    if isinstance(program, (Finite, EventuallyPeriodic)):
        return MembershipVerdict(
            Verdict.NOT_IN_D, limsup=Fraction(0),
            reason='non-constant period: z_n is bounded',
        )
    if isinstance(program, RunSchedule) and not program.explicit:
        limsup = program.runs.limsup
        if limsup == 0:
            return MembershipVerdict(
                Verdict.NOT_IN_D, limsup=limsup,
                reason='run lengths are o(2^n)',
            )
        # z_n of the shifted stream is z_{n+offset} of the schedule.
        limsup *= 1 << program.offset
        return MembershipVerdict(
            Verdict.IN_D, k=max(1, math.ceil(1 / limsup)), limsup=limsup,
            reason='closed-form runs: L_i / 2^n_i tends to the limsup',
        )
    horizon = max(program.last_position, 1)
    return MembershipVerdict(
        Verdict.UNKNOWN, horizon=horizon,
        reason='explicit runs say nothing past the last scheduled run',
    )
