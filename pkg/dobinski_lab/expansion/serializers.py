from rest_framework import serializers

from numerics.scale import format_rational

from .grammar import format_program, parse_program
from .programs import UNBOUNDED


def format_count(value):
    """Run lengths and exponents; unbounded ones print as `inf`."""
    return 'inf' if value == UNBOUNDED else str(value)


class DigitProgramField(serializers.Field):
    default_error_messages = {
        'invalid': 'Invalid digit program: {error}',
    }

    def to_internal_value(self, data):
        try:
            return parse_program(data)
        except ValueError as error:
            self.fail('invalid', error=error)

    def to_representation(self, value):
        return format_program(value)


class DistanceSerializer(serializers.Serializer):
    exponent_lo = serializers.SerializerMethodField()
    exponent_hi = serializers.SerializerMethodField()
    lo = serializers.SerializerMethodField()
    hi = serializers.SerializerMethodField()
    exact = serializers.BooleanField()

    def get_exponent_lo(self, distance):
        return format_count(distance.exponent_lo)

    def get_exponent_hi(self, distance):
        return format_count(distance.exponent_hi)

    def get_lo(self, distance):
        return None if distance.lo is None else format_rational(distance.lo)

    def get_hi(self, distance):
        return None if distance.hi is None else format_rational(distance.hi)


class NearestDyadicSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    point = serializers.CharField()
    run_length = serializers.SerializerMethodField()
    distance = DistanceSerializer()

    def get_run_length(self, nearest):
        return format_count(nearest.run_length)


class ExpansionRowSerializer(serializers.Serializer):
    """One row of the digit table: n, e_n, z_n, P_n and |x - P_n|."""
    n = serializers.IntegerField()
    digit = serializers.IntegerField()
    z = serializers.SerializerMethodField()
    p_n = serializers.SerializerMethodField()
    distance = serializers.SerializerMethodField()

    def get_z(self, row):
        return format_count(row['nearest'].run_length)

    def get_p_n(self, row):
        return str(row['nearest'].point)

    def get_distance(self, row):
        distance = row['nearest'].distance
        if distance.exact:
            return format_rational(distance.lo)
        if distance.lo is not None:
            return (f'[{format_rational(distance.lo)}, '
                    f'{format_rational(distance.hi)}]')
        return (f'[2^-{format_count(distance.exponent_hi)}, '
                f'2^-{format_count(distance.exponent_lo)}]')


class MembershipVerdictSerializer(serializers.Serializer):
    verdict = serializers.SerializerMethodField()
    k = serializers.IntegerField(allow_null=True)
    limsup = serializers.SerializerMethodField()
    horizon = serializers.IntegerField(allow_null=True)
    reason = serializers.CharField()

    def get_verdict(self, verdict):
        return verdict.verdict.value

    def get_limsup(self, verdict):
        if verdict.limsup is None:
            return None
        if verdict.limsup == UNBOUNDED:
            return 'inf'
        return format_rational(verdict.limsup)
