import logging
from dataclasses import dataclass
from fractions import Fraction

from .conf import lab_setting
from .exceptions import PrecisionError
from .intervals import DEFAULT_BITS
from .scale import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeasureEnclosure:
    """Certified lo <= measure <= hi; exact when lo == hi."""
    lo: Fraction
    hi: Fraction
    bits: int = 0

    @property
    def exact(self):
        return self.lo == self.hi

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def value(self):
        """The exact value, or the midpoint of the enclosure."""
        return (self.lo + self.hi) / 2

    def __str__(self):
        if self.exact:
            return format_rational(self.lo)
        return f'[{format_rational(self.lo)}, {format_rational(self.hi)}]'


def merged_components(segments):
    """Sorted disjoint components of a union of (left, right) segments."""
    components = []
    for left, right in sorted(segments):
        if components and left <= components[-1][1]:
            if right > components[-1][1]:
                components[-1] = (components[-1][0], right)
        else:
            components.append((left, right))
    return components


def union_components(family, bits=DEFAULT_BITS, side='outer'):
    return merged_components(family.segments(bits, side))


def total_length(components):
    return sum((right - left for left, right in components), Fraction(0))


def overlap_length(first, second):
    """Length of the intersection of two sorted component lists."""
    total = Fraction(0)
    i = j = 0
    while i < len(first) and j < len(second):
        left = max(first[i][0], second[j][0])
        right = min(first[i][1], second[j][1])
        if left < right:
            total += right - left
        if first[i][1] < second[j][1]:
            i += 1
        else:
            j += 1
    return total


def _enclose(evaluate, exact, tolerance, max_bits):
    if tolerance is None:
        tolerance = lab_setting('MEASURE_TOLERANCE')
    if max_bits is None:
        max_bits = lab_setting('MAX_PRECISION_BITS')
    if exact:
        value = evaluate(DEFAULT_BITS, 'outer')
        return MeasureEnclosure(value, value)
    bits = DEFAULT_BITS
    while True:
        lo, hi = evaluate(bits, 'inner'), evaluate(bits, 'outer')
        if hi - lo <= tolerance:
            return MeasureEnclosure(lo, hi, bits)
        if bits * 2 > max_bits:
            raise PrecisionError(
                f'Measure enclosure width {float(hi - lo):.3g} is above '
                f'{float(tolerance):.3g} at {bits} bits.'
            )
        logger.debug('Refining measure enclosure: %s -> %s bits',
                     bits, bits * 2)
        bits *= 2


def exact_measure(family, tolerance=None, max_bits=None):
    """
    Lebesgue measure of the union of a family.
    Returns an exact MeasureEnclosure when every radius has an exact
    length, otherwise an enclosure at most `tolerance` wide.
    """
    def evaluate(bits, side):
        return total_length(union_components(family, bits, side))

    return _enclose(evaluate, family.is_exact, tolerance, max_bits)


def intersect_measure(first, second, tolerance=None, max_bits=None):
    """Measure of the intersection of the unions of two families."""
    def evaluate(bits, side):
        return overlap_length(
            union_components(first, bits, side),
            union_components(second, bits, side),
        )

    exact = first.is_exact and second.is_exact
    return _enclose(evaluate, exact, tolerance, max_bits)
