"""
Approximation functions phi and the limsup sets built from them.

Stage n of every set is the family of balls B(j/2^n, phi(n)/2^n),
j = 0..2^n, clipped to [0, 1].
"""
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from numerics.conf import lab_setting
from numerics.exceptions import DomainError, ExponentCapError
from numerics.scale import ScaleExponent, format_rational, parse_rational


def _positive(value, name):
    value = Fraction(value)
    if value <= 0:
        raise DomainError(f'{name} must be positive, got {value}.')
    return value


def _positive_integer(value, name):
    value = _positive(value, name)
    if value.denominator != 1:
        raise DomainError(f'{name} must be an integer, got {value}.')
    return int(value)


def tower_ceiling(n, alpha, cap=None):
    """ceil(2^(n alpha)) in exact integer arithmetic."""
    cap = cap or lab_setting('EXPONENT_CAP')
    exponent = n * alpha
    if exponent > cap.bit_length():
        raise ExponentCapError(
            f'2^({format_rational(exponent)}) exceeds the exponent cap {cap}.',
            value=exponent, cap=cap,
        )
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return 1 << p
    target = 1 << p
    with mpmath.workprec(int(exponent) + 64):
        guess = int(mpmath.ceil(mpmath.power(2, mpmath.mpf(p) / q)))
    while guess > 1 and (guess - 1) ** q >= target:
        guess -= 1
    while guess ** q < target:
        guess += 1
    return guess


@dataclass(frozen=True)
class Constant:
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'c', _positive(self.c, 'c'))

    def radius(self, n):
        return self.c / (1 << n)

    def sup(self):
        return float(self.c)

    def __str__(self):
        return f'const:{format_rational(self.c)}'


@dataclass(frozen=True)
class RationalDecay:
    """phi(n) = c n^-p."""
    c: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, 'c', _positive(self.c, 'c'))
        object.__setattr__(self, 'p', _positive_integer(self.p, 'p'))

    def radius(self, n):
        return self.c / (n ** self.p << n)

    def sup(self):
        return float(self.c)

    def __str__(self):
        return f'rational:{format_rational(self.c)},{self.p}'


@dataclass(frozen=True)
class PowerDecay:
    """phi(n) = 2^(-n alpha)."""
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _positive(self.alpha, 'alpha'))

    def radius(self, n):
        return ScaleExponent(n * (1 + self.alpha))

    def sup(self):
        return 2.0 ** -float(self.alpha)

    def __str__(self):
        return f'power:{format_rational(self.alpha)}'


@dataclass(frozen=True)
class DoubleExp:
    """phi(n) = 2^n 2^(-2^n / k), the Dobinski slice D(k)."""
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'k', _positive_integer(self.k, 'k'))

    def radius(self, n):
        return ScaleExponent(Fraction(1 << n, self.k))

    def sup(self):
        exponents = (
            n - Fraction(1 << n, self.k)
            for n in range(self.k.bit_length() + 3)
        )
        return 2.0 ** float(max(exponents))

    def __str__(self):
        return f'dexp:{self.k}'


@dataclass(frozen=True)
class TowerDecay:
    """phi(n) = 2^(-ceil(2^(n alpha))): runs of at least 2^(n alpha) digits."""
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _positive(self.alpha, 'alpha'))

    def radius(self, n):
        return ScaleExponent(n + tower_ceiling(n, self.alpha))

    def sup(self):
        return 0.5

    def __str__(self):
        return f'tower:{format_rational(self.alpha)}'


@dataclass(frozen=True)
class Tabulated:
    """phi(1), phi(2), ... given as data; nothing is known past the table."""
    values: tuple

    def __post_init__(self):
        values = tuple(_positive(value, 'phi(n)') for value in self.values)
        if not values:
            raise DomainError('A tabulated phi needs at least one value.')
        object.__setattr__(self, 'values', values)

    def radius(self, n):
        if not 1 <= n <= len(self.values):
            raise DomainError(f'phi({n}) is outside the table.')
        return self.values[n - 1] / (1 << n)

    def sup(self):
        return float(max(self.values))

    def __str__(self):
        return 'table:' + ','.join(map(format_rational, self.values))


@dataclass(frozen=True)
class DobinskiK:
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'k', _positive_integer(self.k, 'k'))

    @property
    def phi(self):
        return DoubleExp(self.k)

    def __str__(self):
        return f'dobinski:{self.k}'


@dataclass(frozen=True)
class UniformGrid:
    omega: object

    def __post_init__(self):
        if not hasattr(self.omega, 'radius'):
            object.__setattr__(self, 'omega', Constant(self.omega))

    @property
    def phi(self):
        return self.omega

    def __str__(self):
        return f'grid:{self.omega}'


@dataclass(frozen=True)
class RunAtLeast:
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _positive(self.alpha, 'alpha'))

    @property
    def phi(self):
        return PowerDecay(self.alpha)

    def __str__(self):
        return f'run:{format_rational(self.alpha)}'


@dataclass(frozen=True)
class RunAtLeastExp:
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', _positive(self.alpha, 'alpha'))

    @property
    def phi(self):
        return TowerDecay(self.alpha)

    def __str__(self):
        return f'runexp:{format_rational(self.alpha)}'


@dataclass(frozen=True)
class BPhi:
    phi: object

    def __str__(self):
        return f'phi:{self.phi}'


def parse_phi(text):
    """const:c | rational:c,p | power:a | dexp:k | tower:a | table:v,v,..."""
    kind, _, argument = str(text).strip().partition(':')
    arguments = [part.strip() for part in argument.split(',') if part.strip()]
    if kind == 'const' and len(arguments) == 1:
        return Constant(parse_rational(arguments[0]))
    if kind == 'rational' and len(arguments) == 2:
        return RationalDecay(
            parse_rational(arguments[0]), parse_rational(arguments[1]))
    if kind == 'power' and len(arguments) == 1:
        return PowerDecay(parse_rational(arguments[0]))
    if kind == 'dexp' and len(arguments) == 1:
        return DoubleExp(parse_rational(arguments[0]))
    if kind == 'tower' and len(arguments) == 1:
        return TowerDecay(parse_rational(arguments[0]))
    if kind == 'table' and arguments:
        return Tabulated(tuple(map(parse_rational, arguments)))
    raise DomainError(f'`{text}` is not an approximation function.')


def parse_set(text):
    """dobinski:k | grid:<phi or rational> | run:a | runexp:a | phi:<phi>"""
    kind, _, argument = str(text).strip().partition(':')
    if kind == 'dobinski':
        return DobinskiK(parse_rational(argument))
    if kind == 'grid':
        if ':' in argument:
            return UniformGrid(parse_phi(argument))
        return UniformGrid(Constant(parse_rational(argument)))
    if kind == 'run':
        return RunAtLeast(parse_rational(argument))
    if kind == 'runexp':
        return RunAtLeastExp(parse_rational(argument))
    if kind == 'phi':
        return BPhi(parse_phi(argument))
    raise DomainError(f'`{text}` is not a limsup set.')
