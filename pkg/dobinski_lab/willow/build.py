"""
Enumeration of willow generations and the recursive Frostman measure.

mu_k(L) = mu_{k-1}(J) / (M_k N_{k,j}(J)) for a family-j interval L
inside its progenitor J; inside a leaf the measure is a multiple of
length.
"""
import bisect
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import accumulate

from numerics.conf import lab_setting
from numerics.exceptions import (DomainError, ResourceError,
                                 SymbolicGenerationError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Node:
    """[left, left + 2^-exponent] with its weight and progenitor index."""
    k: int
    j: int
    left: Fraction
    exponent: int
    weight: Fraction = None
    parent: int = None

    @property
    def length(self):
        return Fraction(1, 1 << self.exponent)

    @property
    def right(self):
        return self.left + self.length


ROOT = Node(0, 1, Fraction(0), 0, Fraction(1))


@dataclass(frozen=True)
class GenerationBuild:
    k: int
    parent: Node
    families: dict = field(default_factory=dict)

    @property
    def counts(self):
        return {j: len(lefts) for j, lefts in self.families.items()}

    @property
    def starved(self):
        """Families with no member inside the parent."""
        return [j for j, count in self.counts.items() if count == 0]


def family_lefts(record, j, parent):
    """Left ends l 2^-(n_k + j) of family j inside parent, l odd for j > 1."""
    scale = 1 << record.grid(j)
    length = Fraction(1, 1 << record.exponent(j))
    first = math.ceil(parent.left * scale)
    last = math.floor((parent.right - length) * scale)
    step = 1
    if j > 1:
        # Even l are points of coarser grids, which keep the longer interval.
        first |= 1
        step = 2
    return tuple(Fraction(l, scale) for l in range(first, last + 1, step))


def build_generation(schedule, k, parent):
    """Families of generation k inside one generation k-1 interval."""
    record = schedule.generation(k)
    if not record.enumerable:
        raise SymbolicGenerationError(
            f'Generation {k} has M_k = {record.M} families with lengths '
            f'down to 2^-({record.exponent(record.M)}); '
            f'use the exponent-space checks.')
    if parent.k != k - 1:
        raise DomainError(
            f'Generation {k} needs a generation {k - 1} parent, '
            f'got generation {parent.k}.')
    build = GenerationBuild(k, parent, {
        j: family_lefts(record, j, parent)
        for j in range(1, record.M + 1)
    })
    if build.starved:
        logger.warning(
            'Generation %s: parent at %s of length 2^-%s gets no interval '
            'of families %s', k, parent.left, parent.exponent, build.starved)
    return build


@dataclass(frozen=True)
class MeasureTree:
    schedule: object
    levels: tuple

    @property
    def K(self):
        return len(self.levels) - 1

    def nodes(self):
        for level in self.levels:
            yield from level

    @property
    def leaves(self):
        return self.levels[-1]

    def children(self, k, index):
        if k >= self.K:
            return ()
        return tuple(
            node for node in self.levels[k + 1] if node.parent == index)

    def conservation_defects(self):
        """(k, index, weight, children total) wherever the two differ."""
        defects = []
        for k in range(self.K):
            totals = [Fraction(0)] * len(self.levels[k])
            for node in self.levels[k + 1]:
                totals[node.parent] += node.weight
            defects.extend(
                (k, index, node.weight, total)
                for index, (node, total)
                in enumerate(zip(self.levels[k], totals))
                if node.weight != total
            )
        return defects

    @cached_property
    def _leaf_index(self):
        lefts = [leaf.left for leaf in self.leaves]
        rights = [leaf.right for leaf in self.leaves]
        prefix = [
            Fraction(0), *accumulate(leaf.weight for leaf in self.leaves)]
        return lefts, rights, prefix

    def mass(self, lo, hi):
        """mu([lo, hi]), exact."""
        if hi <= lo:
            return Fraction(0)
        lefts, rights, prefix = self._leaf_index
        first = bisect.bisect_right(rights, lo)
        stop = bisect.bisect_left(lefts, hi)
        if first >= stop:
            return Fraction(0)
        total = prefix[stop] - prefix[first]
        head = self.leaves[first]
        if lo > head.left:
            total -= head.weight * (lo - head.left) / head.length
        tail = self.leaves[stop - 1]
        if hi < tail.right:
            total -= tail.weight * (tail.right - hi) / tail.length
        return total


def frostman_measure(schedule, K=None):
    """The weighted tree of generations 1..K."""
    K = schedule.K if K is None else K
    if not 1 <= K <= schedule.K:
        raise DomainError(f'K must lie in 1..{schedule.K}, got {K}.')
    limit = lab_setting('MAX_TREE_NODES')
    levels = [(ROOT,)]
    for k in range(1, K + 1):
        record = schedule.generation(k)
        level = []
        for index, parent in enumerate(levels[-1]):
            build = build_generation(schedule, k, parent)
            if build.starved:
                raise DomainError(
                    f'Generation {k}: the parent at {parent.left} of length '
                    f'2^-{parent.exponent} receives no interval of families '
                    f'{build.starved}.')
            for j, lefts in build.families.items():
                weight = parent.weight / (record.M * len(lefts))
                exponent = record.exponent(j)
                level.extend(
                    Node(k, j, left, exponent, weight, index)
                    for left in lefts
                )
            if len(level) > limit:
                raise ResourceError(
                    f'Generation {k} exceeds {limit} intervals.')
        level.sort(key=lambda node: node.left)
        levels.append(tuple(level))
        logger.info('Generation %s: %s intervals', k, len(level))
    return MeasureTree(schedule, tuple(levels))
