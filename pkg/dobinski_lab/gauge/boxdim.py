"""
Box counting and single-scale covers in exponent space.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from limsup.specs import TowerDecay, tower_ceiling
from numerics.conf import lab_setting
from numerics.exceptions import (DomainError, ExponentCapError, FitError,
                                 PrecisionError)
from numerics.intervals import DEFAULT_BITS
from numerics.measure import union_components
from numerics.scale import ScaleExponent

logger = logging.getLogger(__name__)

ORDINARY = 'ordinary'
LOGARITHMIC = 'logarithmic'


def _check_scale(m, exponent_cap):
    """Reject negative scales and scales past the exponent cap."""
    if m < 0:
        raise DomainError('Scale exponent m must be non-negative.')
    cap = exponent_cap or lab_setting('EXPONENT_CAP')
    if m > cap:
        raise ExponentCapError(
            f'Scale 2^-{m} is past the exponent cap {cap}.',
            value=m, cap=cap,
        )


def _boxes(components, m):
    """Boxes [j 2^-m, (j+1) 2^-m) meeting the open components; last closed."""
    size = 1 << m
    count = 0
    last = -1
    for left, right in components:
        first = max(math.floor(left * size), last + 1)
        end = min(math.ceil(right * size) - 1, size - 1)
        if end >= first:
            count += end - first + 1
            last = end
    return count


def _balls(components, m):
    """Fewest closed intervals of length 2^(1-m) covering the components."""
    diameter = Fraction(2, 1 << m)
    count = 0
    reach = None
    for left, right in components:
        if reach is not None and right <= reach:
            continue
        start = left if reach is None else max(left, reach)
        needed = math.ceil((right - start) / diameter)
        count += needed
        reach = start + needed * diameter
    return count


def _refined(family, counter, m):
    """Inner and outer counts agree once the radius enclosures are tight."""
    if family.is_exact:
        return counter(union_components(family), m)
    max_bits = lab_setting('MAX_PRECISION_BITS')
    bits = DEFAULT_BITS
    while True:
        inner = counter(union_components(family, bits, 'inner'), m)
        outer = counter(union_components(family, bits, 'outer'), m)
        if inner == outer:
            return outer
        if bits * 2 > max_bits:
            raise PrecisionError(
                f'Counts at scale 2^-{m} stay between {inner} and {outer} '
                f'at {bits} bits.'
            )
        logger.debug('Refining counts at m=%s: %s -> %s bits',
                     m, bits, bits * 2)
        bits *= 2


def box_count(family, m, exponent_cap=None):
    """Number of dyadic boxes of side 2^-m meeting the union of the family."""
    _check_scale(m, exponent_cap)
    return _refined(family, _boxes, m)


def cover_count(family, m, exponent_cap=None):
    """Fewest balls of radius 2^-m covering the union of the family."""
    _check_scale(m, exponent_cap)
    return _refined(family, _balls, m)


def natural_cover(spec, n):
    """
    (2^n + 1, E) for a stage whose balls of radius 2^-E are disjoint
    (E >= n + 1), without enumerating the stage.
    """
    phi = spec.phi
    if isinstance(phi, TowerDecay):
        # Only the exponent is materialized, so the cap applies to its
        # bit length.
        cap = 1 << lab_setting('EXPONENT_CAP')
        radius = ScaleExponent(n + tower_ceiling(n, phi.alpha, cap))
    else:
        radius = phi.radius(n)
    if not isinstance(radius, ScaleExponent) or radius.value < n + 1:
        raise DomainError(
            f'Stage {n} of {spec} has no disjoint 2^-E cover.')
    return (1 << n) + 1, radius


def single_scale_ratio(count, scale, mode=ORDINARY):
    """log2 N / m (ordinary) or log2 N / log2 m (logarithmic)."""
    if isinstance(scale, ScaleExponent):
        scale = scale.value
    if count < 1 or scale <= 0:
        raise DomainError('Ratios need a positive count and scale.')
    if mode == ORDINARY:
        return math.log2(count) / float(scale)
    if mode == LOGARITHMIC:
        if scale <= 1:
            raise DomainError('Logarithmic ratios need a scale above 1.')
        return math.log2(count) / _log2(scale)
    raise DomainError(f'Unknown fit mode `{mode}`.')


def _log2(value):
    """log2 of a positive int or Fraction without float overflow."""
    if isinstance(value, int):
        return math.log2(value)
    return math.log2(value.numerator) - math.log2(value.denominator)


@dataclass(frozen=True)
class FitReport:
    slope: float
    residual: float
    samples: tuple
    mode: str = ORDINARY


def dim_fit(samples, mode=ORDINARY):
    """
    Least-squares slope of log2 N against m (ordinary) or log2 m
    (logarithmic), with the largest absolute residual.
    """
    samples = tuple((m, int(count)) for m, count in samples)
    if mode not in (ORDINARY, LOGARITHMIC):
        raise DomainError(f'Unknown fit mode `{mode}`.')
    if any(count < 1 for _, count in samples):
        raise FitError('Box counts must be positive.')
    if mode == LOGARITHMIC and any(m <= 0 for m, _ in samples):
        raise FitError('Logarithmic fits need positive scales.')
    x = np.array([
        float(m) if mode == ORDINARY else _log2(m) for m, _ in samples
    ])
    if len(set(x)) < 2:
        raise FitError('A fit needs at least two distinct scales.')
    y = np.array([math.log2(count) for _, count in samples])
    slope, intercept = np.polyfit(x, y, 1)
    residual = np.max(np.abs(y - (slope * x + intercept)))
    return FitReport(float(slope), float(residual), samples, mode)
