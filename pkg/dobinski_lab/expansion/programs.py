"""
Digit programs: finite descriptions of binary expansions x = 0.e1 e2 e3 ...

Positions are 1-based. Every program answers three questions without
materializing its whole stream: the digits in a window of positions, the
length of the constant block starting at a position and the program of the
shifted tail.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from numerics.conf import lab_setting
from numerics.exceptions import DomainError, ExponentCapError

UNBOUNDED = math.inf


def _check_bits(bits, name, allow_empty=True):
    if not isinstance(bits, str) or set(bits) - {'0', '1'}:
        raise DomainError(f'{name} must be a string of binary digits.')
    if not allow_empty and not bits:
        raise DomainError(f'{name} must not be empty.')


def _bits_value(bits):
    if not bits:
        return Fraction(0)
    return Fraction(int(bits, 2), 1 << len(bits))


@dataclass(frozen=True)
class Finite:
    """A dyadic rational written with its terminating expansion."""
    bits: str = ''

    def __post_init__(self):
        _check_bits(self.bits, 'Finite bits')
        object.__setattr__(self, 'bits', self.bits.rstrip('0'))

    def digit(self, position):
        if position <= len(self.bits):
            return int(self.bits[position - 1])
        return 0

    def digits_between(self, first, last):
        return [self.digit(position) for position in range(first, last + 1)]

    def constant_run(self, start):
        if start > len(self.bits):
            return UNBOUNDED
        target = self.digit(start)
        position = start
        while position <= len(self.bits) and self.digit(position) == target:
            position += 1
        return position - start

    def shifted(self, n):
        return Finite(self.bits[n:])

    @property
    def is_dyadic(self):
        return True

    def value(self):
        return _bits_value(self.bits)


@dataclass(frozen=True)
class EventuallyPeriodic:
    prefix: str
    period: str

    def __post_init__(self):
        _check_bits(self.prefix, 'Prefix')
        _check_bits(self.period, 'Period', allow_empty=False)

    @property
    def constant_period(self):
        return len(set(self.period)) == 1

    def digit(self, position):
        if position <= len(self.prefix):
            return int(self.prefix[position - 1])
        index = (position - len(self.prefix) - 1) % len(self.period)
        return int(self.period[index])

    def digits_between(self, first, last):
        return [self.digit(position) for position in range(first, last + 1)]

    def constant_run(self, start):
        if self.constant_period and start > len(self.prefix):
            return UNBOUNDED
        target = self.digit(start)
        position = start
        while self.digit(position) == target:
            position += 1
            if self.constant_period and position > len(self.prefix):
                return UNBOUNDED
        return position - start

    def shifted(self, n):
        if n <= len(self.prefix):
            return EventuallyPeriodic(self.prefix[n:], self.period)
        turn = (n - len(self.prefix)) % len(self.period)
        return EventuallyPeriodic('', self.period[turn:] + self.period[:turn])

    @property
    def is_dyadic(self):
        return self.constant_period

    def value(self):
        cycle = Fraction(int(self.period, 2), (1 << len(self.period)) - 1)
        return _bits_value(self.prefix) + cycle / (1 << len(self.prefix))


@dataclass(frozen=True)
class Run:
    """Digit `digit` on positions position+1 .. position+length."""
    position: int
    length: int
    digit: int

    @property
    def end(self):
        return self.position + self.length


def _run_length_cap(position):
    cap = lab_setting('EXPONENT_CAP')
    if position > cap:
        raise ExponentCapError(
            f'Run position {position} exceeds the exponent cap {cap}.',
            value=position, cap=cap,
        )


@dataclass(frozen=True)
class GeometricRuns:
    """
    Runs of length ceil(2**n_i / k), n_{i+1} = max(ratio * n_i, end_i + 1).
    limsup z_n / 2**n equals 1/k for every such schedule.
    """
    n1: int
    ratio: int
    k: int
    digit: int

    def __post_init__(self):
        if self.n1 < 1 or self.ratio < 1 or self.k < 1:
            raise DomainError('Geometric runs need n1, ratio, k >= 1.')
        if self.digit not in (0, 1):
            raise DomainError('Run digit must be 0 or 1.')

    def length_at(self, position):
        _run_length_cap(position)
        return -(-(1 << position) // self.k)

    def __iter__(self):
        position = self.n1
        while True:
            run = Run(position, self.length_at(position), self.digit)
            yield run
            position = max(self.ratio * position, run.end + 1)

    @property
    def limsup(self):
        return Fraction(1, self.k)


@dataclass(frozen=True)
class LinearRuns:
    """Runs of length ceil(slope n_i), n_{i+1} = max(ratio n_i, end_i + 1)."""
    n1: int
    ratio: int
    slope: Fraction
    digit: int

    def __post_init__(self):
        object.__setattr__(self, 'slope', Fraction(self.slope))
        if self.n1 < 1 or self.ratio < 1 or self.slope <= 0:
            raise DomainError('Linear runs need n1, ratio >= 1, slope > 0.')
        if self.digit not in (0, 1):
            raise DomainError('Run digit must be 0 or 1.')

    def length_at(self, position):
        return max(1, math.ceil(self.slope * position))

    def __iter__(self):
        position = self.n1
        while True:
            run = Run(position, self.length_at(position), self.digit)
            yield run
            position = max(self.ratio * position, run.end + 1)

    @property
    def limsup(self):
        return Fraction(0)


@dataclass(frozen=True)
class RunSchedule:
    """
    Periodic filler overwritten by runs.

    A run (n, L, b) writes b on positions n+1..n+L, the terminator n+L+1
    and the lead-in n (n >= 1) carry 1-b, so z_n = L exactly.
    Precedence: run, terminator, lead-in, filler.
    `offset` shifts the whole stream: digit j of the program is digit
    j + offset of the underlying schedule.
    """
    fill: str
    runs: object
    offset: int = 0

    def __post_init__(self):
        _check_bits(self.fill, 'Filler', allow_empty=False)
        if self.offset < 0:
            raise DomainError('Offset must be non-negative.')
        if isinstance(self.runs, (list, tuple)):
            runs = tuple(
                run if isinstance(run, Run) else Run(*run)
                for run in self.runs
            )
            object.__setattr__(self, 'runs', runs)
            self._validate(runs)

    @staticmethod
    def _validate(runs):
        previous = None
        for run in runs:
            if run.position < 0 or run.length < 1:
                raise DomainError(f'Invalid run {run}.')
            if run.digit not in (0, 1):
                raise DomainError('Run digit must be 0 or 1.')
            if previous is not None and previous.end >= run.position:
                raise DomainError(
                    f'Run at {run.position} overlaps the run ending at '
                    f'{previous.end}.'
                )
            previous = run

    @property
    def explicit(self):
        return isinstance(self.runs, tuple)

    @property
    def constant_fill(self):
        return len(set(self.fill)) == 1

    def filler_digit(self, position):
        return int(self.fill[(position - 1) % len(self.fill)])

    def blocks(self):
        """
        (first, last, digit) blocks of the unshifted stream in order.
        digit is None on filler blocks; the final filler block is unbounded.
        """
        position = 1
        for run in self.runs:
            if run.position > position:
                yield position, run.position - 1, None
                position = run.position
            if run.position >= 1 and run.position == position:
                yield position, position, 1 - run.digit
            yield run.position + 1, run.end, run.digit
            yield run.end + 1, run.end + 1, 1 - run.digit
            position = run.end + 2
        yield position, UNBOUNDED, None

    def _base_constant_run(self, start):
        blocks = self.blocks()
        for first, last, digit in blocks:
            if last >= start:
                break
        target = self.filler_digit(start) if digit is None else digit
        length = 0
        position = start
        while True:
            if digit is not None or self.constant_fill:
                block_digit = self.filler_digit(1) if digit is None else digit
                if block_digit != target:
                    return length
                if last == UNBOUNDED:
                    return UNBOUNDED
                length += last - position + 1
            else:
                cursor = position
                while cursor <= last:
                    if self.filler_digit(cursor) != target:
                        return length + cursor - position
                    cursor += 1
                length += last - position + 1
            first, last, digit = next(blocks)
            position = first

    def _base_digits(self, first, last):
        digits = []
        for block_first, block_last, digit in self.blocks():
            if block_last < first:
                continue
            if block_first > last:
                break
            low, high = max(first, block_first), min(last, block_last)
            if digit is None:
                digits.extend(
                    self.filler_digit(position)
                    for position in range(low, high + 1)
                )
            else:
                digits.extend([digit] * (high - low + 1))
        return digits

    def digit(self, position):
        return self._base_digits(position + self.offset,
                                 position + self.offset)[0]

    def digits_between(self, first, last):
        return self._base_digits(first + self.offset, last + self.offset)

    def constant_run(self, start):
        return self._base_constant_run(start + self.offset)

    def shifted(self, n):
        return RunSchedule(self.fill, self.runs, self.offset + n)

    @property
    def last_position(self):
        """Last position written by an explicit run, 0 without runs."""
        if not self.explicit or not self.runs:
            return 0
        return self.runs[-1].end + 1

    @property
    def is_dyadic(self):
        return self.explicit and self.constant_fill

    def as_periodic(self):
        """Eventually periodic program with the same digits (explicit runs)."""
        if not self.explicit:
            raise DomainError('Generated schedules are not periodic.')
        horizon = lab_setting('DIGIT_HORIZON')
        end = self.last_position
        if end > horizon:
            raise ExponentCapError(
                f'Explicit runs reach position {end} beyond the digit '
                f'horizon {horizon}.',
                value=end, cap=horizon,
            )
        end += -end % len(self.fill)
        prefix = ''.join(map(str, self._base_digits(1, end)))
        return EventuallyPeriodic(prefix, self.fill).shifted(self.offset)

    def value(self):
        return self.as_periodic().value()


def digits(program, count):
    """First `count` digits e_1..e_count."""
    if count < 1:
        raise DomainError('Digit count must be positive.')
    return program.digits_between(1, count)


def shift(program, n):
    """Program of T^n x = 0.e_{n+1} e_{n+2} ..."""
    if n < 0:
        raise DomainError('Shift must be non-negative.')
    if n == 0:
        return program
    return program.shifted(n)


def value(program):
    """Exact value of a program with a rational description."""
    return program.value()


def value_enclosure(program, horizon):
    """S_H <= x <= S_H + 2**-H from the first H digits."""
    low = _bits_value(''.join(map(str, program.digits_between(1, horizon))))
    return low, low + Fraction(1, 1 << horizon)


def is_dyadic(program):
    return program.is_dyadic
