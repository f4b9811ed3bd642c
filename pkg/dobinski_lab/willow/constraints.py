"""
Constraints (A)-(D) of a willow schedule and the planner.

(A) M_k A(k-1, M_{k-1}) > 1, or locally: every progenitor receives
    intervals of every family.
(B) N_{k,j}(J) is within a constant factor of g(j, k) |J|, g = 2^(n_k + j).
(C) at most C g(j, k) |I| + slack members of family j meet any interval I.
(D) 2^-(n_k + M_k) - A(k, 1) >= c A(k, M_k).

Enumerable generations are checked on the built intervals; the others in
exponent space.
"""
import bisect
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction

from numerics.conf import lab_setting
from numerics.exceptions import DomainError, ExponentCapError
from numerics.scale import format_rational

from .build import ROOT, Node, build_generation
from .schedule import (TAMED_MODE, TRUE_MODE, GenerationRecord,
                       TowerExponent, WillowSchedule)

logger = logging.getLogger(__name__)

MAX_PLANNER_STEPS = 4096


class Status(enum.Enum):
    PASS = 'pass'
    FAIL = 'fail'
    SYMBOLIC_PASS = 'symbolic-pass'


@dataclass(frozen=True)
class ConstraintResult:
    constraint: str
    k: int
    status: Status
    witness: str
    constant: object = None


@dataclass(frozen=True)
class ConstraintReport:
    results: tuple

    @property
    def passed(self):
        return all(result.status != Status.FAIL for result in self.results)

    @property
    def failures(self):
        return tuple(
            result for result in self.results if result.status == Status.FAIL)

    def get(self, constraint, k):
        for result in self.results:
            if result.constraint == constraint and result.k == k:
                return result
        raise KeyError((constraint, k))


def _ceil_log2(c):
    """Smallest t >= 0 with c <= 2^t."""
    shift = 0
    while c > (1 << shift):
        shift += 1
    return shift


def separation(record, c):
    """(D) for one generation, decided in exponent space."""
    a = record.n + record.M
    b = record.exponent(1)
    d = record.exponent(record.M)
    if b <= a:
        return Status.FAIL, (
            f'A({record.k},1) = 2^-({b}) is not shorter than the grid '
            f'spacing 2^-({a})')
    witness = (f'2^-({a}) - 2^-({b}) >= {format_rational(c)} 2^-({d})')
    if d >= a + 1 + _ceil_log2(c):
        symbolic = isinstance(d, TowerExponent)
        return (Status.SYMBOLIC_PASS if symbolic else Status.PASS), witness
    # d is within a few bits of a here, so the exact check is small.
    lhs = 1 - Fraction(1, 1 << (b - a))
    rhs = c / (1 << (d - a))
    if lhs >= rhs:
        return Status.PASS, witness
    return Status.FAIL, witness.replace('>=', '<')


def _nesting(schedule, record):
    """Generation k grids are finer than generation k-1 and fit its cells."""
    k = record.k
    if k == 1:
        return ConstraintResult(
            'nesting', k, Status.PASS, 'generation 1 lies in [0,1]')
    previous = schedule.generation(k - 1)
    parent_exponent = schedule.parent_exponent(k)
    if record.n <= previous.n + previous.M:
        return ConstraintResult('nesting', k, Status.FAIL, (
            f'n_{k} = {record.n} <= n_{k - 1} + M_{k - 1} = '
            f'{previous.n + previous.M}: the grids collide'))
    if record.n + 1 < parent_exponent:
        return ConstraintResult('nesting', k, Status.FAIL, (
            f'n_{k} + 1 = {record.n + 1} < {parent_exponent}: the shortest '
            f'progenitor is shorter than one grid cell'))
    status = (Status.SYMBOLIC_PASS
              if isinstance(parent_exponent, TowerExponent) else Status.PASS)
    return ConstraintResult('nesting', k, status, (
        f'n_{k} + 1 = {record.n + 1} >= {parent_exponent}'))


def _global_family_count(schedule, record):
    """(A) in its global form; the margin is log2(M_k A(k-1, M_{k-1}))."""
    parent_exponent = schedule.parent_exponent(record.k)
    if isinstance(parent_exponent, TowerExponent):
        return False, None
    holds = (parent_exponent < record.M.bit_length()
             and record.M > (1 << parent_exponent))
    margin = record.M.bit_length() - 1 - parent_exponent
    return holds, margin


def _family_count(schedule, record, builds):
    """(A) globally, then per progenitor when the generation is built."""
    k = record.k
    holds, margin = _global_family_count(schedule, record)
    if holds:
        return ConstraintResult('A', k, Status.PASS, (
            f'M_{k} = {record.M} > 1 / A({k - 1},M_{k - 1}) = '
            f'2^{schedule.parent_exponent(k)}'), margin)
    if builds is not None:
        for build in builds:
            if build.starved:
                return ConstraintResult('A', k, Status.FAIL, (
                    f'progenitor at {build.parent.left} of length '
                    f'2^-{build.parent.exponent} gets no interval of '
                    f'families {build.starved}'), margin)
        return ConstraintResult('A', k, Status.PASS, (
            f'local: every progenitor meets all {record.M} families'), margin)
    if record.n + 1 >= schedule.parent_exponent(k):
        return ConstraintResult('A', k, Status.SYMBOLIC_PASS, (
            f'local: n_{k} + 1 >= e({k - 1},M_{k - 1}) puts every family '
            f'in every progenitor'), margin)
    return ConstraintResult('A', k, Status.FAIL, (
        f'M_{k} A({k - 1},M_{k - 1}) <= 1 and progenitors of length '
        f'2^-{schedule.parent_exponent(k)} miss the grid'), margin)


def _equidistribution(record, builds):
    """(B) from the built counts: N / (g |J|) for every progenitor J."""
    k = record.k
    limit = lab_setting('EQUIDISTRIBUTION_CONSTANT')
    constant = Fraction(1)
    for build in builds:
        for j, count in build.counts.items():
            expected = Fraction(1 << record.grid(j)) / (
                1 << build.parent.exponent)
            ratio = count / expected
            if ratio == 0:
                return ConstraintResult('B', k, Status.FAIL, (
                    f'N_{k},{j} = 0 in the progenitor at '
                    f'{build.parent.left}'), None)
            constant = max(constant, ratio, 1 / ratio)
    status = Status.PASS if constant <= limit else Status.FAIL
    return ConstraintResult('B', k, status, (
        f'N_{k},j(J) within a factor {format_rational(constant)} of '
        f'2^(n_{k}+j) |J|'), constant)


def _window_count(lefts, length, window):
    """Most members of length `length` meeting one closed window."""
    best = 0
    for index, left in enumerate(lefts):
        stop = bisect.bisect_right(lefts, left + length + window)
        best = max(best, stop - index)
    return best


def _distribution(record, builds):
    """
    (C) on dyadic windows 2^-t, t <= n_k + j + 2. Shorter windows meet at
    most two members since members sit 2^-(n_k + j) apart.
    """
    k = record.k
    factor = lab_setting('EQUIDISTRIBUTION_CONSTANT')
    slack = lab_setting('EQUIDISTRIBUTION_SLACK')
    constant = Fraction(0)
    for j in range(1, record.M + 1):
        lefts = sorted(
            left for build in builds for left in build.families[j])
        length = Fraction(1, 1 << record.exponent(j))
        g = 1 << record.grid(j)
        for t in range(record.grid(j) + 3):
            window = Fraction(1, 1 << t)
            count = _window_count(lefts, length, window)
            if count > factor * g * window + slack:
                return ConstraintResult('C', k, Status.FAIL, (
                    f'{count} members of family {j} meet a window of '
                    f'length 2^-{t}'), None)
            constant = max(constant, (count - slack) / (g * window))
    return ConstraintResult('C', k, Status.PASS, (
        f'at most {format_rational(constant)} g |I| + {slack} members '
        f'meet any window'), constant)


def _gaps(record, builds, c):
    """(D) on the built intervals: the smallest gap between neighbours."""
    intervals = sorted(
        (left, left + Fraction(1, 1 << record.exponent(j)))
        for build in builds for j, lefts in build.families.items()
        for left in lefts
    )
    bound = c / (1 << record.exponent(record.M))
    for (_, right), (left, _) in zip(intervals, intervals[1:]):
        if left - right < bound:
            return Status.FAIL, (
                f'intervals ending at {right} and starting at {left} are '
                f'closer than {format_rational(c)} A({record.k},M_{record.k})')
    return None


def _builds(schedule, record, parents):
    """Generation builds inside every parent, or None past the node limit."""
    if parents is None or not record.enumerable:
        return None
    builds = [build_generation(schedule, record.k, parent)
              for parent in parents]
    total = sum(sum(build.counts.values()) for build in builds)
    if total > lab_setting('MAX_TREE_NODES'):
        logger.info('Generation %s has %s intervals; checking in exponent '
                    'space', record.k, total)
        return None
    return builds


def check_constraints(schedule, separation_constant=None):
    """Per generation results for nesting and (A)-(D)."""
    c = Fraction(separation_constant
                 or lab_setting('SEPARATION_CONSTANT'))
    results = []
    parents = [ROOT]
    for record in schedule.generations:
        k = record.k
        results.append(_nesting(schedule, record))
        builds = _builds(schedule, record, parents)
        results.append(_family_count(schedule, record, builds))
        if builds is not None:
            results.append(_equidistribution(record, builds))
            results.append(_distribution(record, builds))
            parents = [
                Node(k, j, left, record.exponent(j))
                for build in builds for j, lefts in build.families.items()
                for left in lefts
            ]
        else:
            nested = results[-2].status != Status.FAIL
            status = Status.SYMBOLIC_PASS if nested else Status.FAIL
            results.append(ConstraintResult('B', k, status, (
                f'N_{k},1(J) = 2^(n_{k}+1)|J| and N_{k},j(J) = '
                f'2^(n_{k}+j)|J|/2 for j > 1'), Fraction(2)))
            results.append(ConstraintResult('C', k, status, (
                f'family j sits on the grid 2^-(n_{k}+j), so at most '
                f'g |I| + 2 members meet I'), Fraction(1)))
            parents = None
        status, witness = separation(record, c)
        if status != Status.FAIL and builds is not None:
            status, witness = _gaps(record, builds, c) or (status, witness)
        results.append(ConstraintResult('D', k, status, witness, c))
    report = ConstraintReport(tuple(results))
    for failure in report.failures:
        logger.warning('Constraint %s fails at generation %s: %s',
                       failure.constraint, failure.k, failure.witness)
    return report


def plan_schedule(mode, K, n1, m1=None, c=None, separation_constant=None):
    """
    The smallest schedule passing (A) and (D), with its constraint report.
    `m1=None` takes M_1 = floor(1/A(0, 1)) + 1 = 2.
    """
    if K < 1:
        raise DomainError('A schedule needs K >= 1.')
    if mode == TRUE_MODE and K >= 3:
        raise ExponentCapError(
            'Generation 3 of the true schedule needs M_3 = 2^e(2,M_2) + 1 '
            'with e(2,M_2) itself doubly exponential.', value=K, cap=2)
    sep = Fraction(separation_constant
                   or lab_setting('SEPARATION_CONSTANT'))
    records = [GenerationRecord(1, n1, m1 or 2, mode, c)]
    for k in range(2, K + 1):
        previous = records[-1]
        parent_exponent = previous.exponent(previous.M)
        if mode == TAMED_MODE:
            families = previous.M
        else:
            families = (1 << parent_exponent) + 1
        n = max(previous.n + previous.M + 1, parent_exponent - 1)
        for _ in range(MAX_PLANNER_STEPS):
            record = GenerationRecord(k, n, families, mode, c)
            if separation(record, sep)[0] != Status.FAIL:
                break
            n += 1
        else:
            raise DomainError(
                f'No n_{k} below {n} separates generation {k}.')
        logger.info('Generation %s: n_k = %s, M_k = %s', k, n, families)
        records.append(record)
    schedule = WillowSchedule(mode, tuple(records), c)
    return schedule, check_constraints(schedule, sep)
