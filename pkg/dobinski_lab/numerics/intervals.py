import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .dyadic import DyadicRational
from .exceptions import DomainError
from .scale import GUARD_BITS, ScaleExponent, format_rational, widen

DEFAULT_BITS = 64


@dataclass(frozen=True)
class LogGaugeRadius:
    """The radius 1/(ln(1/r))**s produced by a logarithmic gauge."""
    base: object
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, 's', Fraction(self.s))
        if isinstance(self.base, ScaleExponent):
            degenerate = self.base.value == 0
        else:
            degenerate = not 0 < Fraction(self.base) < 1
        if degenerate:
            raise DomainError(
                f'Logarithmic gauge is undefined at radius {self.base}.')

    def log_reciprocal(self):
        """ln(1/r) at the current mpmath precision."""
        if isinstance(self.base, ScaleExponent):
            value = self.base.value
            return mpmath.mpf(value.numerator) / value.denominator * mpmath.ln2
        base = Fraction(self.base)
        return -mpmath.log(mpmath.mpf(base.numerator) / base.denominator)

    def bounds(self, bits):
        with mpmath.workprec(bits + GUARD_BITS):
            value = mpmath.power(
                self.log_reciprocal(),
                -mpmath.mpf(self.s.numerator) / self.s.denominator,
            )
            return widen(value, bits)

    def __str__(self):
        return f'log-gauge({self.base}, s={format_rational(self.s)})'


@dataclass(frozen=True)
class PowerRadius:
    """The radius base**s for a rational base with no exact s-th power."""
    base: Fraction
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'base', Fraction(self.base))
        object.__setattr__(self, 's', Fraction(self.s))
        if self.base <= 0:
            raise DomainError(
                f'Fractional powers need a positive radius, got {self.base}.')

    def bounds(self, bits):
        with mpmath.workprec(bits + GUARD_BITS):
            value = mpmath.power(
                mpmath.mpf(self.base.numerator) / self.base.denominator,
                mpmath.mpf(self.s.numerator) / self.s.denominator,
            )
            return widen(value, bits)

    def __str__(self):
        return f'({format_rational(self.base)})^{format_rational(self.s)}'


@functools.singledispatch
def _radius_bounds(radius, bits):
    raise TypeError(f'Unsupported radius {radius!r}.')


@_radius_bounds.register
def _(radius: ScaleExponent, bits):
    return radius.length_bounds(bits)


@_radius_bounds.register
def _(radius: Fraction, bits):
    return radius, radius


@_radius_bounds.register
def _(radius: LogGaugeRadius, bits):
    return radius.bounds(bits)


@_radius_bounds.register
def _(radius: PowerRadius, bits):
    return radius.bounds(bits)


@functools.lru_cache(maxsize=4096, typed=True)
def radius_bounds(radius, bits):
    """Rational lo <= radius <= hi for any radius kind."""
    return _radius_bounds(radius, bits)


def radius_is_exact(radius):
    if isinstance(radius, ScaleExponent):
        return radius.is_integral
    return isinstance(radius, Fraction)


def _clip(center, radius):
    left = max(Fraction(0), center - radius)
    right = min(Fraction(1), center + radius)
    if left >= right:
        return None
    return left, right


@dataclass(frozen=True)
class Interval:
    """
    Open ball B(center, radius) clipped to [0, 1].
    The radius is a ScaleExponent, an exact Fraction length, a
    LogGaugeRadius or a PowerRadius.
    """
    center: DyadicRational
    radius: object

    def __post_init__(self):
        if not isinstance(self.center, DyadicRational):
            object.__setattr__(
                self, 'center', DyadicRational.from_fraction(self.center))
        if isinstance(self.radius, int):
            object.__setattr__(self, 'radius', Fraction(self.radius))
        if isinstance(self.radius, Fraction) and self.radius < 0:
            raise DomainError(f'Negative radius {self.radius}.')

    @classmethod
    def closed(cls, left, exponent):
        """The interval [left, left + 2**-exponent] written as a ball."""
        if not isinstance(left, DyadicRational):
            left = DyadicRational.from_fraction(left)
        center = left + DyadicRational.power_of_two(exponent + 1)
        return cls(center, ScaleExponent(exponent + 1))

    @property
    def is_exact(self):
        return radius_is_exact(self.radius)

    def segment(self, bits=DEFAULT_BITS, side='outer'):
        """
        Clipped (left, right) with the radius rounded inward ('inner') or
        outward ('outer'); None when the clipped ball is empty.
        """
        lo, hi = radius_bounds(self.radius, bits)
        radius = hi if side == 'outer' else lo
        return _clip(self.center.to_fraction(), radius)

    def length(self, bits=DEFAULT_BITS, side='outer'):
        segment = self.segment(bits, side)
        return Fraction(0) if segment is None else segment[1] - segment[0]

    def with_radius(self, radius):
        return Interval(self.center, radius)


def bracket(interval):
    """
    Inner and outer intervals with exactly representable radii.
    Scale exponents are rounded to ceil(E) and floor(E).
    """
    radius = interval.radius
    if isinstance(radius, ScaleExponent):
        return (
            interval.with_radius(ScaleExponent(radius.ceil())),
            interval.with_radius(ScaleExponent(radius.floor())),
        )
    lo, hi = radius_bounds(radius, DEFAULT_BITS)
    return interval.with_radius(lo), interval.with_radius(hi)


def _left_key(interval):
    segment = interval.segment()
    left = segment[0] if segment else interval.center.to_fraction()
    return left, interval.center.to_fraction()


@dataclass(frozen=True)
class IntervalFamily:
    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, 'members', tuple(sorted(self.members, key=_left_key)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def is_exact(self):
        return all(member.is_exact for member in self.members)

    def segments(self, bits=DEFAULT_BITS, side='outer'):
        found = (member.segment(bits, side) for member in self.members)
        return [segment for segment in found if segment is not None]

    def radii(self):
        return {member.radius for member in self.members}

    def union(self, other):
        return IntervalFamily(self.members + other.members)

    def map_radius(self, transform):
        return IntervalFamily(tuple(
            member.with_radius(transform(member.radius))
            for member in self.members
        ))

    def bracket(self):
        pairs = [bracket(member) for member in self.members]
        return (
            IntervalFamily(tuple(inner for inner, _ in pairs)),
            IntervalFamily(tuple(outer for _, outer in pairs)),
        )
