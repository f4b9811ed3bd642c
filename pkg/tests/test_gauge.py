import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gauge.boxdim import (LOGARITHMIC, box_count, cover_count, dim_fit,
                          natural_cover, single_scale_ratio)
from gauge.gauges import (LogPower, Power, covering_sum, gauge_eval_scale,
                          parse_gauge)
from gauge.series import (INFINITE, Convergence, LogReciprocalPsi,
                          PolynomialPsi, SuperLiouvillePsi, critical_exponent,
                          jarnik_critical_exponent, jarnik_series,
                          khintchine_series, parse_psi, series_classify)
from limsup.specs import (Constant, DobinskiK, DoubleExp, PowerDecay,
                          RunAtLeast, RunAtLeastExp, Tabulated, TowerDecay)
from limsup.stages import stage_family
from numerics.exceptions import DomainError, ExponentCapError, FitError
from numerics.intervals import IntervalFamily
from numerics.scale import ScaleExponent
from tests.fixtures.fixture_families import dyadic_families

gauges = st.sampled_from([Power(1), Power(Fraction(1, 2)), LogPower(1)])


class TestGaugeEvaluation:

    def test_power(self):
        assert gauge_eval_scale(Power(Fraction(1, 2)), 8) == ScaleExponent(4)

    @pytest.mark.parametrize('n', [1, 5, 20])
    def test_log_power_at_double_exponent(self, n):
        value = gauge_eval_scale(LogPower(1), 1 << n)
        expected = 1 / (mpmath.mpf(2) ** n * mpmath.ln2)
        assert abs(value - expected) < mpmath.mpf(10) ** -15 * expected, (
            f'Check that h(2^-2^{n}) = 1 / (2^{n} ln 2) for h = 1/log(1/r).'
        )

    def test_log_power_fractional_exponent(self):
        value = gauge_eval_scale(LogPower(2), Fraction(16, 3))
        assert abs(value - 0.0731732) < 1e-6, (
            'Check that 1 / ((16/3) ln 2)^2 ~ 0.073173, '
            f'got {mpmath.nstr(value, 8)}.'
        )

    def test_log_power_infinite_at_one(self):
        with pytest.raises(DomainError):
            gauge_eval_scale(LogPower(1), 0)

    def test_parse_gauge(self):
        assert parse_gauge('power:1/2') == Power(Fraction(1, 2))
        assert parse_gauge('log:1') == LogPower(1)
        with pytest.raises(DomainError):
            parse_gauge('exp:1')
        with pytest.raises(DomainError):
            parse_gauge('power:0')


class TestCoveringSum:

    def test_dobinski_stage(self):
        n = 10
        total = covering_sum(stage_family(DobinskiK(1), n), LogPower(1))
        expected = mpmath.mpf((1 << n) + 1) / ((1 << n) * mpmath.ln2)
        assert float(total.lo) <= expected * (1 + 1e-15), (
            'Check that the covering sum of A_(n,1) under log gauge is '
            '(2^n + 1) / (2^n ln 2).'
        )
        assert float(total.hi) >= expected * (1 - 1e-15)
        assert total.width < Fraction(1, 10 ** 12)

    def test_critical_power(self):
        family = stage_family(RunAtLeast(1), 10)
        total = covering_sum(family, Power(Fraction(1, 2)))
        assert total.exact and total.lo == Fraction(1025, 1024), (
            'Check that the critical exponent makes the stage sum '
            '(2^n + 1) 2^-n.'
        )

    def test_single_interval(self):
        family = stage_family(DobinskiK(1), 3)
        total = covering_sum(IntervalFamily(family.members[:1]), Power(1))
        assert total.lo == total.hi == Fraction(1, 256)

    @given(dyadic_families, st.randoms(use_true_random=False), gauges)
    def test_order_does_not_matter(self, family, random, gauge):
        members = list(family.members)
        random.shuffle(members)
        shuffled = covering_sum(IntervalFamily(tuple(members)), gauge)
        assert shuffled == covering_sum(family, gauge), (
            'Check that the covering sum ignores the order of the members.'
        )

    @given(dyadic_families, dyadic_families, gauges)
    def test_additive_over_families(self, first, second, gauge):
        total = covering_sum(first.union(second), gauge)
        parts = covering_sum(first, gauge), covering_sum(second, gauge)
        assert total.lo == parts[0].lo + parts[1].lo, (
            'Check that the covering sum of two families is the sum of '
            'their covering sums.'
        )
        assert total.hi == parts[0].hi + parts[1].hi

    @pytest.mark.parametrize('alpha', [1, 2, 3])
    @pytest.mark.parametrize('n', range(4, 15))
    def test_critical_stage_sum(self, alpha, n):
        family = stage_family(RunAtLeast(alpha), n)
        total = covering_sum(family, Power(Fraction(1, 1 + alpha)))
        assert total.exact and total.lo == Fraction((1 << n) + 1, 1 << n)
        assert Fraction(1, 2) <= total.lo <= 4, (
            f'Check that the critical sum of E_{alpha} at stage {n} stays '
            'within [1/2, 4].'
        )


class TestSeriesClassify:

    @pytest.mark.parametrize('k', [1, 2, 3])
    def test_dobinski_log_gauge_diverges(self, k):
        verdict = series_classify(DoubleExp(k), LogPower(1))
        assert verdict.verdict is Convergence.DIVERGES, (
            f'Check that the series of D({k}) under h = 1/log diverges.'
        )
        assert 'constant terms' in verdict.certificate
        constant = k / mpmath.ln2
        assert abs(verdict.shape.constant - constant) < 1e-12, (
            f'Check that the constant term is {k}/ln 2.'
        )
        assert len(verdict.trace) == 30
        for row in verdict.trace:
            assert abs(row.term - constant) < 1e-12, (
                f'Check that term {row.n} of the trace equals {k}/ln 2.'
            )
        assert verdict.mtp_applicable
        assert verdict.interpretation == 'H_h(B(phi)) = infinity'

    @pytest.mark.parametrize('k', [1, 2, 3])
    @pytest.mark.parametrize('s', [Fraction(3, 2), Fraction(2)])
    def test_dobinski_faster_log_gauge_converges(self, k, s):
        verdict = series_classify(DoubleExp(k), LogPower(s))
        assert verdict.verdict is Convergence.CONVERGES, (
            f'Check that the series of D({k}) under h = 1/log^{s} converges.'
        )
        assert verdict.tail_bound is not None, (
            'Check that geometric convergence comes with a tail bound.'
        )

    def test_power_decay_boundary(self):
        verdict = series_classify(PowerDecay(1), Power(Fraction(1, 2)))
        assert verdict.verdict is Convergence.DIVERGES
        verdict = series_classify(PowerDecay(1), Power(Fraction(3, 5)))
        assert verdict.verdict is Convergence.CONVERGES
        assert 'geometric ratio' in verdict.certificate

    def test_unbounded_terms_withhold_interpretation(self):
        verdict = series_classify(Constant(1), Power(Fraction(1, 2)))
        assert verdict.verdict is Convergence.DIVERGES
        assert not verdict.mtp_applicable, (
            'Check that unbounded series terms are reported as a violation.'
        )
        assert verdict.interpretation is None

    def test_unsupported_is_inconclusive(self):
        phi = Tabulated((Fraction(1), Fraction(1, 2), Fraction(1, 4)))
        verdict = series_classify(phi, Power(1))
        assert verdict.verdict is Convergence.INCONCLUSIVE
        assert [row.n for row in verdict.trace] == [1, 2, 3], (
            'Check that the trace stops where the table ends.'
        )

    def test_horizon_must_be_positive(self):
        with pytest.raises(DomainError):
            series_classify(DoubleExp(1), LogPower(1), horizon=0)


class TestCriticalExponent:

    @pytest.mark.parametrize('alpha', [1, 2, 3])
    def test_power_decay(self, alpha):
        assert critical_exponent(PowerDecay(alpha), Power) == Fraction(
            1, 1 + alpha), (
            f'Check that dim E_{alpha} = 1/(1 + {alpha}) exactly.'
        )

    @pytest.mark.parametrize('alpha', [1, 2])
    def test_tower_decay(self, alpha):
        assert critical_exponent(TowerDecay(alpha), LogPower) == Fraction(
            1, alpha), (
            f'Check that L-dim F_{alpha} = 1/{alpha} exactly.'
        )

    def test_dobinski(self):
        assert critical_exponent(DoubleExp(2), LogPower) == 1
        assert critical_exponent(DoubleExp(2), Power) == 0

    def test_unbounded(self):
        assert critical_exponent(Constant(1), LogPower) == INFINITE

    def test_unsupported(self):
        with pytest.raises(DomainError):
            critical_exponent(Tabulated((Fraction(1),)), Power)


class TestKhintchineJarnik:

    def test_khintchine_converges(self):
        verdict = khintchine_series(PolynomialPsi(2))
        assert verdict.verdict is Convergence.CONVERGES, (
            'Check that the sum of q^-2 converges.'
        )
        assert verdict.trace[0].n == 2, (
            'Check that the trace starts at q = 2.'
        )

    def test_khintchine_log_reciprocal_diverges(self):
        verdict = khintchine_series(LogReciprocalPsi())
        assert verdict.verdict is Convergence.DIVERGES
        assert 'Bertrand' in verdict.certificate

    def test_jarnik_critical(self):
        psi = PolynomialPsi(3)
        assert jarnik_critical_exponent(psi, Power) == Fraction(1, 2), (
            'Check that the Jarnik critical exponent of q^-3 is 2/(1 + 3).'
        )
        assert jarnik_series(
            psi, Power(Fraction(1, 2))).verdict is Convergence.DIVERGES
        assert jarnik_series(psi, Power(1)).verdict is Convergence.CONVERGES

    def test_super_liouville(self):
        psi = SuperLiouvillePsi(1)
        assert jarnik_series(psi, Power(1)).verdict is Convergence.CONVERGES
        assert jarnik_critical_exponent(psi, LogPower) == 2, (
            'Check that 2^(-q) gives a logarithmic critical exponent of 2.'
        )

    def test_parse_psi(self):
        assert parse_psi('power:3') == PolynomialPsi(3)
        assert parse_psi('logrecip') == LogReciprocalPsi()
        assert parse_psi('superliouville:1/2') == SuperLiouvillePsi(
            Fraction(1, 2))
        with pytest.raises(DomainError):
            parse_psi('logrecip:1')


class TestBoxCounting:

    def test_unit_interval(self, unit_interval):
        assert box_count(unit_interval, 5) == 32
        assert box_count(unit_interval, 0) == 1
        assert cover_count(unit_interval, 5) == 16

    def test_run_stage(self):
        family = stage_family(RunAtLeast(1), 4)
        count = box_count(family, 8)
        assert count == 32, (
            'Check that 15 interior intervals of length 2^-7 meet two boxes '
            f'of side 2^-8 and the two clipped ones meet one, got {count}.'
        )

    @given(dyadic_families, st.integers(min_value=0, max_value=14))
    def test_box_count_growth(self, family, m):
        coarse, fine = box_count(family, m), box_count(family, m + 1)
        assert coarse <= (1 << m) + 1, (
            f'Check that at most 2^{m} + 1 boxes of side 2^-{m} are counted.'
        )
        assert fine <= 2 * coarse, (
            f'Check that halving the box side at most doubles the count, '
            f'got {coarse} then {fine}.'
        )

    def test_scale_past_cap(self, unit_interval):
        with pytest.raises(ExponentCapError):
            box_count(unit_interval, 40, exponent_cap=32)
        with pytest.raises(DomainError):
            box_count(unit_interval, -1)

    @pytest.mark.parametrize('alpha', [1, 2, 3])
    def test_power_decay_ratio(self, alpha):
        n = 10
        scale = n * (1 + alpha)
        count = cover_count(stage_family(RunAtLeast(alpha), n), scale)
        assert count == (1 << n) + 1
        ratio = single_scale_ratio(count, scale)
        assert abs(ratio - 1 / (1 + alpha)) < 0.05, (
            f'Check that the single-scale ratio of E_{alpha} is close to '
            f'1/(1 + {alpha}), got {ratio}.'
        )

    @pytest.mark.parametrize('alpha', [1, 2])
    def test_tower_decay_logarithmic_ratio(self, alpha):
        for n in range(4, 15):
            count, radius = natural_cover(RunAtLeastExp(alpha), n)
            ratio = single_scale_ratio(count, radius, LOGARITHMIC)
            assert abs(ratio - 1 / alpha) < 0.1, (
                f'Check that the logarithmic ratio of F_{alpha} at n = {n} '
                f'is close to 1/{alpha}, got {ratio}.'
            )

    def test_natural_cover_needs_disjoint_balls(self):
        assert natural_cover(DobinskiK(1), 3) == (9, ScaleExponent(8))
        with pytest.raises(DomainError):
            natural_cover(Constant(Fraction(1, 4)), 3)


class TestDimFit:

    def test_unit_interval(self):
        report = dim_fit([(m, 1 << m) for m in range(4, 11)])
        assert abs(report.slope - 1) < 1e-3, (
            f'Check that [0, 1] has box-counting slope 1, got {report.slope}.'
        )
        assert report.residual < 1e-9

    def test_logarithmic(self):
        samples = [(1 << n, 1 << n) for n in range(2, 8)]
        report = dim_fit(samples, LOGARITHMIC)
        assert math.isclose(report.slope, 1, abs_tol=1e-9)

    @pytest.mark.parametrize('samples', [
        [(4, 16)],
        [(4, 16), (4, 16)],
        [(4, 0), (5, 32)],
    ])
    def test_degenerate_samples(self, samples):
        with pytest.raises(FitError):
            dim_fit(samples)
