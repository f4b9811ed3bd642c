from fractions import Fraction

from rest_framework import serializers

from identity.serializers import format_mpf
from numerics.scale import format_rational
from numerics.serializers import BigIntegerField, RationalField


class GenerationRecordSerializer(serializers.Serializer):
    """
    Exact integers travel as strings. Generations past the enumeration
    cap list e(k, 1) and e(k, M_k) only, with their indices.
    """
    k = serializers.IntegerField()
    n_k = serializers.IntegerField(source='n')
    M_k = BigIntegerField(source='M')
    enumerable = serializers.BooleanField()
    e = serializers.SerializerMethodField()
    e_indices = serializers.SerializerMethodField()

    def _indices(self, record):
        if record.enumerable:
            return list(range(1, record.M + 1))
        return [1, record.M]

    def get_e(self, record):
        return [str(record.exponent(j)) for j in self._indices(record)]

    def get_e_indices(self, record):
        return [str(j) for j in self._indices(record)]


class WillowScheduleSerializer(serializers.Serializer):
    mode = serializers.CharField()
    c = serializers.IntegerField(allow_null=True)
    generations = GenerationRecordSerializer(many=True)


def _format_constant(value):
    if value is None:
        return None
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return format_mpf(value, 15)


class ConstraintResultSerializer(serializers.Serializer):
    constraint = serializers.CharField()
    k = serializers.IntegerField()
    status = serializers.CharField(source='status.value')
    witness = serializers.CharField()
    constant = serializers.SerializerMethodField()

    def get_constant(self, result):
        return _format_constant(result.constant)


class ConstraintReportSerializer(serializers.Serializer):
    passed = serializers.BooleanField()
    results = ConstraintResultSerializer(many=True)


class DyadicWindowSerializer(serializers.Serializer):
    left = RationalField()
    length_log2 = serializers.SerializerMethodField()

    def get_length_log2(self, window):
        return -window.exponent


class FrostmanAuditSerializer(serializers.Serializer):
    gauge = serializers.SerializerMethodField()
    max_ratio = serializers.SerializerMethodField()
    argmax_interval = DyadicWindowSerializer(source='argmax')
    probes = serializers.IntegerField()
    seed = serializers.IntegerField()
    probe_max = serializers.SerializerMethodField()
    generations = serializers.SerializerMethodField()
    uniformity = serializers.CharField(source='uniformity.value')

    def get_gauge(self, audit):
        return str(audit.gauge)

    def get_max_ratio(self, audit):
        return format_mpf(audit.max_ratio, 15)

    def get_probe_max(self, audit):
        return format_mpf(audit.probe_max, 15)

    def get_generations(self, audit):
        return [
            {'k': k, 'max_ratio': format_mpf(ratio, 15)}
            for k, ratio in audit.generation_max
        ]


class HypothesisCheckSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    indices = serializers.ListField(child=BigIntegerField())
    constant = serializers.SerializerMethodField()
    holds = serializers.BooleanField()

    def get_constant(self, check):
        return format_mpf(check.constant, 15)


class GenerationRatioSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    ratio = serializers.SerializerMethodField()
    j = BigIntegerField()
    parent_exponent = serializers.SerializerMethodField()

    def get_ratio(self, row):
        return format_mpf(row.ratio, 15)

    def get_parent_exponent(self, row):
        return str(row.parent_exponent)


class MeasureTreeSerializer(serializers.Serializer):
    """Per generation: interval count, total weight and weight range."""
    generations = serializers.SerializerMethodField()
    conservation_defects = serializers.SerializerMethodField()

    def get_generations(self, tree):
        rows = []
        for k, level in enumerate(tree.levels):
            weights = [node.weight for node in level]
            rows.append({
                'k': k,
                'intervals': len(level),
                'total_weight': format_rational(sum(weights)),
                'min_weight': format_rational(min(weights)),
                'max_weight': format_rational(max(weights)),
            })
        return rows

    def get_conservation_defects(self, tree):
        return len(tree.conservation_defects())
