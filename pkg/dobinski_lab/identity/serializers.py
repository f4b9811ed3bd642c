import mpmath
from rest_framework import serializers


def format_mpf(value, digits):
    return mpmath.nstr(value, digits, min_fixed=-4, max_fixed=digits)


class ProductTraceSerializer(serializers.Serializer):
    """Trace row: n, partial, tail, target, |partial - target|."""
    n = serializers.IntegerField()
    partial = serializers.SerializerMethodField()
    tail = serializers.SerializerMethodField()
    target = serializers.SerializerMethodField()
    error = serializers.SerializerMethodField()

    def _format(self, trace, value):
        return format_mpf(value, trace.precision)

    def get_partial(self, trace):
        return self._format(trace, trace.partial)

    def get_tail(self, trace):
        return self._format(trace, trace.tail)

    def get_target(self, trace):
        return self._format(trace, trace.target)

    def get_error(self, trace):
        return format_mpf(trace.error, 6)


class TailBoundSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    run_length = serializers.SerializerMethodField()
    lower = serializers.SerializerMethodField()
    upper = serializers.SerializerMethodField()

    def get_run_length(self, bound):
        return str(bound.run_length)

    def get_lower(self, bound):
        return format_mpf(bound.lower, 15)

    def get_upper(self, bound):
        return format_mpf(bound.upper, 15)


class BellSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    mode = serializers.CharField()
    value = serializers.CharField()
    truncation_bound = serializers.CharField(allow_null=True)
