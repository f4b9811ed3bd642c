"""
Convergence of the gauge series behind the limsup-set dichotomy.

Verdicts never come from partial sums. Each supported combination of an
approximation function and a gauge maps to an asymptotic term shape

    C * 2^(lam n) * n^-a * (ln n)^-b      (or super-geometric decay)

whose parameters are affine in the gauge exponent s, and the verdict is
read from the shape: geometric test first, then p-series, then Bertrand.
Partial sums up to the horizon are attached as a trace only.
"""
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from limsup.specs import (Constant, DoubleExp, PowerDecay, RationalDecay,
                          TowerDecay)
from numerics.exceptions import DomainError, ExponentCapError
from numerics.intervals import DEFAULT_BITS
from numerics.scale import ScaleExponent, format_rational, parse_rational

from .gauges import LogPower, Power, dyadic_scale, gauge_log2

logger = logging.getLogger(__name__)

INFINITE = mpmath.inf


class Convergence(enum.Enum):
    CONVERGES = 'Converges'
    DIVERGES = 'Diverges'
    INCONCLUSIVE = 'Inconclusive'


@dataclass(frozen=True)
class AffineShape:
    """
    Term shape with lam, a and b given as (value at s = 0, slope in s).
    `base` and `per_ln2` describe the constant C = (base / ln 2^per_ln2)^s
    when the terms are exactly C 2^(lam n).
    """
    lam: tuple = (Fraction(0), Fraction(0))
    a: tuple = (Fraction(0), Fraction(0))
    b: tuple = (Fraction(0), Fraction(0))
    fast: bool = False
    base: Fraction = None
    per_ln2: bool = False

    def at(self, s):
        s = Fraction(s)

        def evaluate(pair):
            return Fraction(pair[0]) + Fraction(pair[1]) * s

        return TermShape(
            lam=evaluate(self.lam), a=evaluate(self.a), b=evaluate(self.b),
            fast=self.fast, constant=self._constant(s),
        )

    def _constant(self, s):
        if self.base is None:
            return None
        with mpmath.workprec(DEFAULT_BITS):
            base = mpmath.mpf(self.base.numerator) / self.base.denominator
            if self.per_ln2:
                base /= mpmath.ln2
            return mpmath.power(base, mpmath.mpf(s.numerator) / s.denominator)

    def critical(self):
        """Exact sup of the s > 0 with a divergent series (inf or 0)."""
        if self.fast:
            return Fraction(0)
        # Divergence needs lam > 0, else a < 1, else b <= 1; every slope
        # is signed so that growing s moves towards convergence.
        for pair, threshold in ((self.lam, 0), (self.a, 1), (self.b, 1)):
            value, slope = map(Fraction, pair)
            if slope:
                return max(Fraction(0), (threshold - value) / slope)
            if value != threshold:
                diverges = value > 0 if threshold == 0 else value < threshold
                return INFINITE if diverges else Fraction(0)
        return INFINITE


@dataclass(frozen=True)
class TermShape:
    lam: Fraction
    a: Fraction
    b: Fraction
    fast: bool = False
    constant: object = None

    @property
    def bounded(self):
        if self.fast or self.lam < 0:
            return True
        if self.lam > 0:
            return False
        return self.a > 0 or (self.a == 0 and self.b >= 0)

    def classify(self):
        """(verdict, certificate) from the geometric, p and Bertrand tests."""
        if self.fast:
            return Convergence.CONVERGES, 'super-geometric decay'
        ratio = f'2^({format_rational(self.lam)})'
        if self.lam > 0:
            return Convergence.DIVERGES, f'geometric ratio {ratio} > 1'
        if self.lam < 0:
            return Convergence.CONVERGES, f'geometric ratio {ratio} < 1'
        if self.a == 0 and self.b == 0:
            return Convergence.DIVERGES, 'constant terms'
        p = format_rational(self.a)
        if self.a != 1:
            verdict = (Convergence.CONVERGES if self.a > 1
                       else Convergence.DIVERGES)
            return verdict, f'p-series with p = {p}'
        verdict = (Convergence.CONVERGES if self.b > 1
                   else Convergence.DIVERGES)
        return verdict, (
            f'Bertrand series n^-1 (ln n)^-{format_rational(self.b)}')

    def tail_bound(self, horizon):
        """Sum of the terms past `horizon` for exactly geometric terms."""
        if self.constant is None or self.fast or self.lam >= 0:
            return None
        if self.a or self.b:
            return None
        with mpmath.workprec(DEFAULT_BITS):
            lam = mpmath.mpf(self.lam.numerator) / self.lam.denominator
            ratio = mpmath.power(2, lam)
            return self.constant * ratio ** (horizon + 1) / (1 - ratio)


@dataclass(frozen=True)
class TraceRow:
    n: int
    log2_term: object
    term: mpmath.mpf


@dataclass(frozen=True)
class SeriesVerdict:
    verdict: Convergence
    certificate: str
    series: str
    shape: TermShape = None
    tail_bound: object = None
    trace: tuple = ()
    hypotheses: dict = field(default_factory=dict)
    violations: tuple = ()
    interpretation: str = None

    @property
    def mtp_applicable(self):
        return not self.violations


def _mpf(value):
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


# Shapes of 2^n h(phi(n)/2^n), keyed by (phi class, gauge class).
PHI_SHAPES = {
    (Constant, Power): lambda phi: AffineShape(
        lam=(1, -1), base=phi.c),
    (Constant, LogPower): lambda phi: AffineShape(
        lam=(1, 0), a=(0, 1)),
    (RationalDecay, Power): lambda phi: AffineShape(
        lam=(1, -1), a=(0, phi.p)),
    (RationalDecay, LogPower): lambda phi: AffineShape(
        lam=(1, 0), a=(0, 1)),
    (PowerDecay, Power): lambda phi: AffineShape(
        lam=(1, -(1 + phi.alpha)), base=Fraction(1)),
    (PowerDecay, LogPower): lambda phi: AffineShape(
        lam=(1, 0), a=(0, 1)),
    (DoubleExp, Power): lambda phi: AffineShape(fast=True),
    (DoubleExp, LogPower): lambda phi: AffineShape(
        lam=(1, -1), base=Fraction(phi.k), per_ln2=True),
    (TowerDecay, Power): lambda phi: AffineShape(fast=True),
    (TowerDecay, LogPower): lambda phi: AffineShape(
        lam=(1, -phi.alpha)),
}


def phi_shape(phi, gauge_family):
    """Affine term shape of the phi series, or None when unsupported."""
    if not isinstance(gauge_family, type):
        gauge_family = type(gauge_family)
    builder = PHI_SHAPES.get((type(phi), gauge_family))
    return builder(phi) if builder else None


def _phi_log2_term(phi, gauge, n):
    """log2 of 2^n h(phi(n) / 2^n); exact for power gauges on 2^-E radii."""
    radius = phi.radius(n)
    if isinstance(radius, Fraction):
        radius = dyadic_scale(radius)
    if isinstance(radius, ScaleExponent):
        if isinstance(gauge, Power):
            return n - gauge.s * radius.value
        log2_radius = -_mpf(radius.value)
    else:
        log2_radius = mpmath.log(_mpf(radius), 2)
    return n + gauge_log2(gauge, log2_radius)


def _trace(log2_term, first, horizon):
    """Terms first..horizon, stopping quietly at the first undefined one."""
    rows = []
    with mpmath.workprec(DEFAULT_BITS):
        for n in range(first, horizon + 1):
            try:
                value = log2_term(n)
            except (DomainError, ExponentCapError) as error:
                logger.debug('Series trace stops at n=%s: %s', n, error)
                break
            exponent = value if isinstance(value, mpmath.mpf) else _mpf(value)
            rows.append(TraceRow(n, value, mpmath.power(2, exponent)))
    return tuple(rows)


def _hypotheses(gauge, shape, sup_phi=None):
    """Mass transference hypotheses and the ones that fail."""
    hypotheses = {'decreasing_ratio': gauge.decreasing_ratio}
    violations = []
    if sup_phi is not None:
        hypotheses['bounded_phi'] = sup_phi < INFINITE
        if not hypotheses['bounded_phi']:
            violations.append('phi is unbounded')
    hypotheses['bounded_terms'] = None if shape is None else shape.bounded
    if hypotheses['bounded_terms'] is False:
        violations.append('the series terms are unbounded')
    if not gauge.decreasing_ratio:
        violations.append('h(x)/x is not non-increasing near 0')
    return hypotheses, tuple(violations)


def _verdict(series, gauge, shape, trace, horizon, sup_phi=None,
             on_divergence=None, on_convergence=None):
    """
    SeriesVerdict from a term shape. A divergence only carries its measure
    interpretation when no hypothesis is violated.
    """
    hypotheses, violations = _hypotheses(gauge, shape, sup_phi)
    if shape is None:
        return SeriesVerdict(
            Convergence.INCONCLUSIVE, 'no closed-form term class', series,
            trace=trace, hypotheses=hypotheses, violations=violations,
        )
    verdict, certificate = shape.classify()
    if shape.constant is not None and not shape.fast and shape.lam == 0:
        certificate += f', C = {mpmath.nstr(shape.constant, 15)}'
    interpretation = None
    if verdict is Convergence.CONVERGES:
        interpretation = on_convergence
    elif not violations:
        interpretation = on_divergence
    return SeriesVerdict(
        verdict, certificate, series, shape=shape,
        tail_bound=shape.tail_bound(horizon), trace=trace,
        hypotheses=hypotheses, violations=violations,
        interpretation=interpretation,
    )


def series_classify(phi, gauge, horizon=30):
    """Verdict for the sum over n of 2^n h(phi(n) / 2^n)."""
    if horizon < 1:
        raise DomainError('Series horizon must be positive.')
    affine = phi_shape(phi, gauge)
    shape = None if affine is None else affine.at(gauge.s)
    trace = _trace(lambda n: _phi_log2_term(phi, gauge, n), 1, horizon)
    logger.debug('series %s / %s: shape %s', phi, gauge, shape)
    return _verdict(
        f'sum 2^n h(phi(n)/2^n), phi = {phi}, h = {gauge}',
        gauge, shape, trace, horizon, sup_phi=phi.sup(),
        on_divergence='H_h(B(phi)) = infinity',
        on_convergence='H_h(B(phi)) = 0',
    )


def critical_exponent(phi, gauge_family):
    """Exact sup of the s with a divergent series for h = gauge_family(s)."""
    affine = phi_shape(phi, gauge_family)
    if affine is None:
        raise DomainError(f'No closed-form term class for {phi}.')
    return affine.critical()


@dataclass(frozen=True)
class PolynomialPsi:
    """psi(q) = q^-alpha."""
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', Fraction(self.alpha))
        if self.alpha <= 0:
            raise DomainError('alpha must be positive.')

    def log2(self, q):
        return -_mpf(self.alpha) * mpmath.log(q, 2)

    def __str__(self):
        return f'power:{format_rational(self.alpha)}'


@dataclass(frozen=True)
class LogReciprocalPsi:
    """psi(q) = 1 / (q ln q)."""

    def log2(self, q):
        return -mpmath.log(q, 2) - mpmath.log(mpmath.log(q), 2)

    def __str__(self):
        return 'logrecip'


@dataclass(frozen=True)
class SuperLiouvillePsi:
    """psi(q) = 2^(-q^alpha)."""
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'alpha', Fraction(self.alpha))
        if self.alpha <= 0:
            raise DomainError('alpha must be positive.')

    def log2(self, q):
        return -mpmath.power(q, _mpf(self.alpha))

    def __str__(self):
        return f'superliouville:{format_rational(self.alpha)}'


def parse_psi(text):
    """power:a | logrecip | superliouville:a"""
    kind, _, argument = str(text).strip().partition(':')
    if kind == 'power' and argument:
        return PolynomialPsi(parse_rational(argument))
    if kind == 'logrecip' and not argument:
        return LogReciprocalPsi()
    if kind == 'superliouville' and argument:
        return SuperLiouvillePsi(parse_rational(argument))
    raise DomainError(f'`{text}` is not a supported psi.')


def khintchine_shape(psi):
    """Term shape of psi(q); unknown classes decay faster than any power."""
    if isinstance(psi, PolynomialPsi):
        return TermShape(Fraction(0), psi.alpha, Fraction(0))
    if isinstance(psi, LogReciprocalPsi):
        return TermShape(Fraction(0), Fraction(1), Fraction(1))
    return TermShape(Fraction(0), Fraction(0), Fraction(0), fast=True)


# Shapes of q h(psi(q)/q) in the variable q.
JARNIK_SHAPES = {
    (PolynomialPsi, Power): lambda psi: AffineShape(
        a=(-1, 1 + psi.alpha)),
    (PolynomialPsi, LogPower): lambda psi: AffineShape(
        a=(-1, 0), b=(0, 1)),
    (LogReciprocalPsi, Power): lambda psi: AffineShape(
        a=(-1, 2), b=(0, 1)),
    (LogReciprocalPsi, LogPower): lambda psi: AffineShape(a=(-1, 0)),
    (SuperLiouvillePsi, Power): lambda psi: AffineShape(fast=True),
    (SuperLiouvillePsi, LogPower): lambda psi: AffineShape(
        a=(-1, psi.alpha)),
}


def jarnik_shape(psi, gauge_family):
    """Affine shape of q h(psi(q)/q) for the gauge family."""
    if not isinstance(gauge_family, type):
        gauge_family = type(gauge_family)
    return JARNIK_SHAPES[(type(psi), gauge_family)](psi)


def khintchine_series(psi, horizon=30):
    """Verdict for the sum over q >= 2 of psi(q)."""
    if horizon < 2:
        raise DomainError('Series horizon must be at least 2.')
    trace = _trace(psi.log2, 2, horizon)
    verdict, certificate = khintchine_shape(psi).classify()
    return SeriesVerdict(
        verdict, certificate, f'sum psi(q), psi = {psi}',
        shape=khintchine_shape(psi), trace=trace,
        interpretation=('|A(psi)| = 0' if verdict is Convergence.CONVERGES
                        else '|A(psi)| = 1'),
    )


def _jarnik_log2_term(psi, gauge, q):
    """log2 of q h(psi(q) / q)."""
    log2_q = mpmath.log(q, 2)
    return log2_q + gauge_log2(gauge, psi.log2(q) - log2_q)


def jarnik_series(psi, gauge, horizon=30):
    """Verdict for the sum over q >= 2 of q h(psi(q) / q)."""
    if horizon < 2:
        raise DomainError('Series horizon must be at least 2.')
    shape = jarnik_shape(psi, gauge).at(gauge.s)
    trace = _trace(lambda q: _jarnik_log2_term(psi, gauge, q), 2, horizon)
    return _verdict(
        f'sum q h(psi(q)/q), psi = {psi}, h = {gauge}',
        gauge, shape, trace, horizon,
        on_divergence='H_h(A(psi)) = H_h([0, 1])',
        on_convergence='H_h(A(psi)) = 0',
    )


def jarnik_critical_exponent(psi, gauge_family):
    """Exponent s where the Jarnik series switches to divergence."""
    return jarnik_shape(psi, gauge_family).critical()
