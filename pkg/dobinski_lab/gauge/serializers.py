from fractions import Fraction

import mpmath
from rest_framework import serializers

from identity.serializers import format_mpf
from numerics.exceptions import DomainError
from numerics.scale import format_rational

from .gauges import parse_gauge
from .series import parse_psi


class GaugeField(serializers.Field):
    """`power:<s>` or `log:<s>`."""
    default_error_messages = {
        'invalid': 'Invalid gauge: {error}',
    }

    def to_internal_value(self, data):
        try:
            return parse_gauge(data)
        except DomainError as error:
            self.fail('invalid', error=error)

    def to_representation(self, value):
        return str(value)


class PsiSpecField(serializers.Field):
    """`power:<alpha>`, `logrecip` or `superliouville:<alpha>`."""
    default_error_messages = {
        'invalid': 'Invalid psi: {error}',
    }

    def to_internal_value(self, data):
        try:
            return parse_psi(data)
        except DomainError as error:
            self.fail('invalid', error=error)

    def to_representation(self, value):
        return str(value)


def format_exponent(value):
    """Exact `p/q` when the value is rational, 15 digits otherwise."""
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return format_mpf(value, 15)


class TraceRowSerializer(serializers.Serializer):
    """CSV row: n, log2_term, term_float."""
    n = serializers.IntegerField()
    log2_term = serializers.SerializerMethodField()
    term_float = serializers.SerializerMethodField()

    def get_log2_term(self, row):
        return format_exponent(row.log2_term)

    def get_term_float(self, row):
        return format_mpf(row.term, 15)


class SeriesVerdictSerializer(serializers.Serializer):
    series = serializers.CharField()
    verdict = serializers.CharField(source='verdict.value')
    certificate = serializers.CharField()
    tail_bound = serializers.SerializerMethodField()
    hypotheses = serializers.DictField()
    violations = serializers.ListField(child=serializers.CharField())
    mtp_applicable = serializers.BooleanField()
    interpretation = serializers.CharField(allow_null=True)
    trace = TraceRowSerializer(many=True)

    def get_tail_bound(self, verdict):
        if verdict.tail_bound is None:
            return None
        return format_mpf(verdict.tail_bound, 15)


def format_critical(value):
    return 'inf' if value == mpmath.inf else format_rational(value)


class FitReportSerializer(serializers.Serializer):
    slope = serializers.FloatField()
    residual = serializers.FloatField()
    samples = serializers.SerializerMethodField()

    def get_samples(self, report):
        return [
            [m if isinstance(m, int) else format_rational(m), count]
            for m, count in report.samples
        ]
