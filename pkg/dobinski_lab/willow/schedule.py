"""
Willow schedules.

Generation k lays M_k families of intervals on the grids 2^-(n_k + j),
family j having length A(k, j) = 2^-e(k, j). The true schedule uses
e = b + 2^b with b = n_k + j; the tamed one uses e = (1 + c) b.
"""
import functools
from dataclasses import dataclass

import mpmath

from numerics.conf import lab_setting
from numerics.exceptions import DomainError, SymbolicGenerationError

TRUE_MODE = 'true-dobinski'
TAMED_MODE = 'tamed'
MODES = (TRUE_MODE, TAMED_MODE)


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class TowerExponent:
    """
    The exponent b + 2^b kept through b.
    Comparisons with integers are decided from bit lengths, so the
    value is never built.
    """
    base: int

    def _compare(self, other):
        if isinstance(other, TowerExponent):
            return (self.base > other.base) - (self.base < other.base)
        if isinstance(other, int):
            if self.base >= other.bit_length():
                return 1
            value = self.base + (1 << self.base)
            return (value > other) - (value < other)
        return NotImplemented

    def __eq__(self, other):
        result = self._compare(other)
        return result if result is NotImplemented else result == 0

    def __lt__(self, other):
        result = self._compare(other)
        return result if result is NotImplemented else result < 0

    def __hash__(self):
        return hash((TowerExponent, self.base))

    def to_mpf(self):
        return mpmath.mpf(self.base) + mpmath.ldexp(1, self.base)

    def __str__(self):
        return f'{self.base}+2^{self.base}'


def exponent_mpf(exponent):
    """An int or TowerExponent as an mpf at the current precision."""
    if isinstance(exponent, TowerExponent):
        return exponent.to_mpf()
    return mpmath.mpf(exponent)


def length_exponent(mode, c, b):
    """e(k, j) for the grid exponent b = n_k + j."""
    if mode == TAMED_MODE:
        return (1 + c) * b
    if b <= lab_setting('EXPONENT_CAP').bit_length():
        return b + (1 << b)
    return TowerExponent(b)


@dataclass(frozen=True)
class GenerationRecord:
    k: int
    n: int
    M: int
    mode: str = TAMED_MODE
    c: int = None

    def __post_init__(self):
        if self.k < 1 or self.n < 0 or self.M < 1:
            raise DomainError(
                f'Generation {self.k} needs n_k >= 0 and M_k >= 1.')

    def grid(self, j):
        """Grid exponent n_k + j of family j."""
        return self.n + j

    def exponent(self, j):
        """Length exponent e(k, j): family j has intervals of length 2^-e."""
        if not 1 <= j <= self.M:
            raise DomainError(
                f'Family {j} is outside 1..{self.M} in generation {self.k}.')
        return length_exponent(self.mode, self.c, self.grid(j))

    @property
    def enumerable(self):
        return (self.M <= lab_setting('ENUMERATION_CAP')
                and self.exponent(self.M) <= lab_setting('EXPONENT_CAP'))

    def exponents(self):
        if not self.enumerable:
            raise SymbolicGenerationError(
                f'Generation {self.k} has {self.M} families; '
                f'use the exponent-space checks.')
        return tuple(self.exponent(j) for j in range(1, self.M + 1))

    def indices(self):
        """Every family when enumerable, else the extremal ones."""
        if self.M <= lab_setting('ENUMERATION_CAP'):
            return tuple(range(1, self.M + 1))
        return tuple(sorted({1, 2, self.M}))


@dataclass(frozen=True)
class WillowSchedule:
    mode: str
    generations: tuple
    c: int = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f'Unknown willow mode `{self.mode}`.')
        if self.mode == TAMED_MODE and not (
                isinstance(self.c, int) and self.c >= 1):
            raise DomainError('The tamed schedule needs an integer c >= 1.')
        if not self.generations:
            raise DomainError('A schedule needs at least one generation.')

    @classmethod
    def from_grid(cls, mode, n_values, m_values, c=None):
        """A schedule with explicit n_k and M_k, whether sound or not."""
        if len(n_values) != len(m_values):
            raise DomainError('n_k and M_k lists differ in length.')
        return cls(mode, tuple(
            GenerationRecord(k, n, m, mode, c)
            for k, (n, m) in enumerate(zip(n_values, m_values), start=1)
        ), c)

    @property
    def K(self):
        return len(self.generations)

    def generation(self, k):
        if not 1 <= k <= self.K:
            raise DomainError(f'Generation {k} is outside 1..{self.K}.')
        return self.generations[k - 1]

    def parent_exponent(self, k):
        """Exponent of the shortest generation k-1 interval."""
        if k == 1:
            return 0
        parent = self.generation(k - 1)
        return parent.exponent(parent.M)
