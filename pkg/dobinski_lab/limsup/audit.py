"""
Quasi-independence of the grid sets U_n = union of B(j/2^n, omega(n)/2^n).

All measures are exact rationals, so the audit needs radii with exact
lengths: constant or rational omega, or power decays with integral
exponents.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from numerics.exceptions import DomainError
from numerics.measure import overlap_length, total_length, union_components

from .specs import Constant, UniformGrid
from .stages import stage_family

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AuditRow:
    n: int
    m: int
    measure_n: Fraction
    measure_m: Fraction
    intersection: Fraction

    @property
    def ratio(self):
        return self.intersection / (self.measure_n * self.measure_m)


@dataclass(frozen=True)
class QuasiIndependenceReport:
    omega: object
    nmax: int
    measures: tuple
    rows: tuple
    overlap_constant: int

    @property
    def max_row(self):
        return max(self.rows, key=lambda row: row.ratio)

    @property
    def max_ratio(self):
        return self.max_row.ratio

    @property
    def argmax(self):
        return self.max_row.n, self.max_row.m

    @property
    def proof_bound(self):
        """2 C_0^2, the constant the overlap argument guarantees."""
        return 2 * self.overlap_constant ** 2


def overlap_constant(family):
    """
    C_0 = 2 * the largest number of members sharing a point.
    Open intervals that only touch do not overlap.
    """
    events = []
    for left, right in family.segments():
        events.append((left, 1))
        events.append((right, -1))
    # -1 sorts first, so a right end closes before a left end opens.
    events.sort()
    depth = deepest = 0
    for _, step in events:
        depth += step
        deepest = max(deepest, depth)
    return 2 * deepest


def _grid(omega):
    if hasattr(omega, 'radius'):
        return UniformGrid(omega)
    omega = Fraction(omega)
    if not 0 < omega <= Fraction(1, 2):
        raise DomainError(
            f'A constant omega must satisfy 0 < omega <= 1/2, got {omega}.')
    return UniformGrid(Constant(omega))


def quasi_independence_audit(omega, nmax):
    """
    Exact ratios |U_n & U_m| / (|U_n| |U_m|) for 1 <= n < m <= nmax.
    `omega` is a constant rational or any bounded phi with exact radii;
    the overlap constant is measured over every stage, never assumed.
    """
    if nmax < 2:
        raise DomainError('The audit needs nmax >= 2.')
    spec = _grid(omega)
    components = {}
    measures = []
    constant = 0
    for n in range(1, nmax + 1):
        family = stage_family(spec, n)
        if not family.is_exact:
            raise DomainError(
                f'Stage {n} of {spec} has radii without exact lengths.')
        components[n] = union_components(family)
        measures.append((n, total_length(components[n])))
        constant = max(constant, overlap_constant(family))
    measure = dict(measures)
    rows = []
    for n in range(1, nmax + 1):
        for m in range(n + 1, nmax + 1):
            rows.append(AuditRow(
                n, m, measure[n], measure[m],
                overlap_length(components[n], components[m]),
            ))
        logger.debug('Quasi-independence audit: row n=%s done', n)
    return QuasiIndependenceReport(
        spec.omega, nmax, tuple(measures), tuple(rows), constant)
