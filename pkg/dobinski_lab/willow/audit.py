"""
Frostman audits: sup of mu(I) / h(|I|) over generation intervals and
seeded dyadic probes, the growth hypothesis g(j, k) >= c / h(A(k, j)),
and the generation ratios read from the closed-form counts.
"""
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from gauge.gauges import LogPower, gauge_log2
from numerics.exceptions import DomainError
from numerics.intervals import DEFAULT_BITS

from .schedule import exponent_mpf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DyadicWindow:
    """[left, left + 2^-exponent]."""
    left: Fraction
    exponent: int

    @property
    def right(self):
        return self.left + Fraction(1, 1 << self.exponent)


class Uniformity(enum.Enum):
    UNIFORM = 'uniform'
    NOT_UNIFORM = 'not-uniform'


def ratio_uniformity(ratios):
    """
    NOT_UNIFORM when the last generation maximum is above every earlier
    one, so the audited generations give no bound for the ratio.
    """
    ratios = list(ratios)
    if len(ratios) > 1 and ratios[-1] > max(ratios[:-1]):
        return Uniformity.NOT_UNIFORM
    return Uniformity.UNIFORM


@dataclass(frozen=True)
class FrostmanAudit:
    gauge: object
    max_ratio: mpmath.mpf
    argmax: DyadicWindow
    probes: int
    seed: int
    generation_max: tuple
    probe_max: mpmath.mpf
    uniformity: Uniformity = Uniformity.UNIFORM


def mass_ratio(mass, exponent, gauge):
    """mu(I) / h(2^-exponent); 0 where h is infinite."""
    if mass == 0 or (isinstance(gauge, LogPower) and exponent == 0):
        return mpmath.mpf(0)
    with mpmath.workprec(DEFAULT_BITS):
        mass = mpmath.mpf(mass.numerator) / mass.denominator
        return mass / mpmath.power(
            2, gauge_log2(gauge, -exponent_mpf(exponent)))


def _random_bits(rng, bits):
    """A uniform integer of `bits` bits from the generator bytes."""
    if bits <= 0:
        return 0
    size = (bits + 7) // 8
    return int.from_bytes(rng.bytes(size), 'big') >> (8 * size - bits)


def _probe(rng, leaves, depth):
    """A dyadic window of random scale around a random point of a leaf."""
    t = int(rng.integers(0, depth + 1))
    leaf = leaves[int(rng.integers(len(leaves)))]
    resolution = max(t, leaf.exponent)
    point = leaf.left + Fraction(
        _random_bits(rng, resolution - leaf.exponent), 1 << resolution)
    cell = math.floor(point * (1 << t))
    return DyadicWindow(Fraction(cell, 1 << t), t)


def frostman_audit(tree, gauge, probes=1000, seed=0):
    """
    Largest mu(I) / h(|I|) over every tree interval and `probes` seeded
    dyadic windows, with the maximum per generation.
    """
    if tree.K < 2:
        raise DomainError('The audit needs a tree of at least 2 generations.')
    if probes < 0:
        raise DomainError('The probe count must be non-negative.')
    best_ratio, best = mpmath.mpf(-1), None
    generation_max = []
    for k, level in enumerate(tree.levels):
        level_ratio = mpmath.mpf(0)
        for node in level:
            ratio = mass_ratio(node.weight, node.exponent, gauge)
            level_ratio = max(level_ratio, ratio)
            if ratio > best_ratio:
                best_ratio = ratio
                best = DyadicWindow(node.left, node.exponent)
        generation_max.append((k, level_ratio))
    rng = np.random.default_rng(seed)
    leaves = tree.leaves
    depth = max(leaf.exponent for leaf in leaves)
    probe_max = mpmath.mpf(0)
    for _ in range(probes):
        window = _probe(rng, leaves, depth)
        ratio = mass_ratio(
            tree.mass(window.left, window.right), window.exponent, gauge)
        probe_max = max(probe_max, ratio)
        if ratio > best_ratio:
            best_ratio, best = ratio, window
    logger.info('Frostman audit under %s: max ratio %s over %s probes',
                gauge, mpmath.nstr(best_ratio, 8), probes)
    uniformity = ratio_uniformity(ratio for _, ratio in generation_max[1:])
    if uniformity is Uniformity.NOT_UNIFORM:
        logger.warning(
            'Frostman ratios under %s still grow at generation %s: %s',
            gauge, tree.K, ', '.join(
                mpmath.nstr(ratio, 6) for _, ratio in generation_max[1:]))
    return FrostmanAudit(gauge, best_ratio, best, probes, seed,
                         tuple(generation_max), probe_max, uniformity)


@dataclass(frozen=True)
class HypothesisCheck:
    k: int
    indices: tuple
    constant: mpmath.mpf
    holds: bool


def frostman_hypothesis(schedule, gauge=None, c=None):
    """
    min over families of g(j, k) h(A(k, j)) per generation against c
    (default ln 2 / 2). Families with n_k + j < 4 are skipped; beyond the
    enumeration cap the extremal families stand in for the rest.
    """
    gauge = gauge or LogPower(1)
    checks = []
    with mpmath.workprec(DEFAULT_BITS):
        c = mpmath.ln2 / 2 if c is None else mpmath.mpf(c)
        for record in schedule.generations:
            indices = tuple(
                j for j in record.indices() if record.grid(j) >= 4)
            if not indices:
                continue
            log2_constant = min(
                record.grid(j) + gauge_log2(
                    gauge, -exponent_mpf(record.exponent(j)))
                for j in indices
            )
            constant = mpmath.power(2, log2_constant)
            checks.append(HypothesisCheck(
                record.k, indices, constant, bool(constant >= c)))
    return tuple(checks)


@dataclass(frozen=True)
class GenerationRatio:
    k: int
    ratio: mpmath.mpf
    j: int
    parent_exponent: object


def _count_exponent(record, j, parent_exponent):
    """log2 N_{k,j}(J) for a progenitor of length 2^-parent_exponent."""
    exponent = record.n + j - parent_exponent - (0 if j == 1 else 1)
    if exponent < 0:
        raise DomainError(
            f'Family {j} of generation {record.k} misses progenitors of '
            f'length 2^-{parent_exponent}.')
    return exponent


def symbolic_generation_ratios(schedule, gauge=None):
    """
    Largest mu(L) / h(|L|) over generation intervals per generation,
    from N_{k,1}(J) = 2^(n_k+1)|J| and N_{k,j}(J) = 2^(n_k+j)|J|/2.
    Progenitors are grouped by (length exponent, accumulated count).
    """
    gauge = gauge or LogPower(1)
    ratios = []
    classes = {(0, 0)}
    log2_families = mpmath.mpf(0)
    with mpmath.workprec(DEFAULT_BITS):
        for record in schedule.generations:
            log2_families += mpmath.log(record.M, 2)
            best = None
            children = set()
            for parent_exponent, counted in sorted(classes, key=str):
                for j in record.indices():
                    total = counted + _count_exponent(
                        record, j, parent_exponent)
                    exponent = record.exponent(j)
                    log2_ratio = -log2_families - total - gauge_log2(
                        gauge, -exponent_mpf(exponent))
                    if best is None or log2_ratio > best[0]:
                        best = (log2_ratio, j, parent_exponent)
                    children.add((exponent, total))
            ratios.append(GenerationRatio(
                record.k, mpmath.power(2, best[0]), best[1], best[2]))
            classes = children
    return tuple(ratios)
