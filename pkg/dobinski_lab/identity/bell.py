import math
from dataclasses import dataclass

import mpmath

from numerics.conf import lab_setting
from numerics.exceptions import DomainError

from .product import working_bits


@dataclass(frozen=True)
class BellEstimate:
    """value <= B_n <= value + truncation_bound."""
    n: int
    terms: int
    value: mpmath.mpf
    truncation_bound: mpmath.mpf


def bell_numbers(count):
    """B_0 .. B_{count-1} from B_{m+1} = sum C(m, k) B_k."""
    numbers = [1]
    while len(numbers) < count:
        m = len(numbers) - 1
        numbers.append(sum(
            math.comb(m, k) * numbers[k] for k in range(m + 1)))
    return numbers[:count]


def _term(k, n):
    return mpmath.power(k, n) / mpmath.factorial(k)


def _series(n, terms, precision):
    if terms < n:
        raise DomainError(f'Series mode needs at least n={n} terms.')
    bits = working_bits(precision or lab_setting('PRECISION'))
    with mpmath.workprec(bits):
        head = mpmath.fsum(_term(k, n) for k in range(terms))
        start = max(terms, n + 1)
        gap = mpmath.fsum(_term(k, n) for k in range(terms, start))
        ratio = mpmath.power(1 + mpmath.mpf(1) / start, n) / (start + 1)
        tail = gap + _term(start, n) / (1 - ratio)
        scale = mpmath.exp(-1)
        slack = 1 + mpmath.ldexp(1, 8 - bits)
        return BellEstimate(n, terms, head * scale, tail * scale * slack)


def bell_number(n, mode='recurrence', terms=None, precision=None):
    """
    B_n exactly ('recurrence') or as (1/e) sum k^n / k! over k < terms
    with a certified truncation bound ('series').
    """
    if n < 0:
        raise DomainError('Bell numbers are defined for n >= 0.')
    if mode == 'recurrence':
        return bell_numbers(n + 1)[n]
    if mode == 'series':
        if terms is None:
            terms = max(2 * n, n + 20)
        return _series(n, terms, precision)
    raise DomainError(f'Unknown Bell mode `{mode}`.')
