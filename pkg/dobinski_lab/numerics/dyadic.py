import functools
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DomainError


def _trailing_zeros(value):
    return (value & -value).bit_length() - 1


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class DyadicRational:
    """
    Exact number numerator / 2**exponent.
    Values are normalized on construction: exponent is 0 or numerator is odd.
    """
    numerator: int
    exponent: int = 0

    def __post_init__(self):
        numerator, exponent = int(self.numerator), int(self.exponent)
        if exponent < 0:
            numerator, exponent = numerator << -exponent, 0
        if numerator == 0:
            exponent = 0
        elif exponent:
            shift = min(_trailing_zeros(numerator), exponent)
            numerator, exponent = numerator >> shift, exponent - shift
        object.__setattr__(self, 'numerator', numerator)
        object.__setattr__(self, 'exponent', exponent)

    @classmethod
    def from_fraction(cls, value):
        value = Fraction(value)
        denominator = value.denominator
        if denominator & (denominator - 1):
            raise DomainError(f'{value} is not a dyadic rational.')
        return cls(value.numerator, denominator.bit_length() - 1)

    @classmethod
    def power_of_two(cls, exponent):
        """2**-exponent."""
        return cls(1, exponent)

    def to_fraction(self):
        return Fraction(self.numerator, 1 << self.exponent)

    def _aligned(self, other):
        if not isinstance(other, DyadicRational):
            other = DyadicRational.from_fraction(other)
        top = max(self.exponent, other.exponent)
        return (
            self.numerator << (top - self.exponent),
            other.numerator << (top - other.exponent),
            top,
        )

    def __add__(self, other):
        left, right, exponent = self._aligned(other)
        return DyadicRational(left + right, exponent)

    __radd__ = __add__

    def __sub__(self, other):
        left, right, exponent = self._aligned(other)
        return DyadicRational(left - right, exponent)

    def __rsub__(self, other):
        left, right, exponent = self._aligned(other)
        return DyadicRational(right - left, exponent)

    def __neg__(self):
        return DyadicRational(-self.numerator, self.exponent)

    def __abs__(self):
        return DyadicRational(abs(self.numerator), self.exponent)

    def __mul__(self, other):
        if not isinstance(other, DyadicRational):
            other = DyadicRational.from_fraction(other)
        return DyadicRational(
            self.numerator * other.numerator,
            self.exponent + other.exponent,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DyadicRational):
            return (self.numerator, self.exponent) == (
                other.numerator, other.exponent)
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other
        if not isinstance(other, DyadicRational):
            return NotImplemented
        left, right, _ = self._aligned(other)
        return left < right

    def __hash__(self):
        return hash(self.to_fraction())

    def __float__(self):
        return float(self.to_fraction())

    def in_unit_interval(self):
        return 0 <= self.numerator <= (1 << self.exponent)

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f'{self.numerator}/2^{self.exponent}'
