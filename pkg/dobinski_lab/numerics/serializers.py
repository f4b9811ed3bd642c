from fractions import Fraction

from rest_framework import serializers

from .dyadic import DyadicRational
from .exceptions import DomainError
from .intervals import (Interval, IntervalFamily, LogGaugeRadius,
                        PowerRadius)
from .scale import ScaleExponent, format_rational, parse_rational


class RationalField(serializers.Field):
    """Exact rational written as `p/q` (or an integer)."""
    default_error_messages = {
        'invalid': 'Expected an exact rational `p/q`, got `{value}`.',
    }

    def to_internal_value(self, data):
        try:
            return parse_rational(data)
        except DomainError:
            self.fail('invalid', value=data)

    def to_representation(self, value):
        return format_rational(value)


class BigIntegerField(serializers.CharField):
    """Arbitrary-precision integer carried as a decimal string."""

    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            return int(text)
        except ValueError:
            raise serializers.ValidationError(
                f'`{text}` is not an integer.')

    def to_representation(self, value):
        return str(value)


class ScaleExponentField(RationalField):
    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if value < 0:
            raise serializers.ValidationError(
                'Scale exponent must be non-negative.')
        return ScaleExponent(value)

    def to_representation(self, value):
        return str(value)


class IntervalSerializer(serializers.Serializer):
    """
    One member of an interval family.
    Exactly one of `radius_log2` (length 2^-E) and `radius` (exact length)
    is given on input.
    """
    center_num = BigIntegerField()
    center_exp = serializers.IntegerField(min_value=0)
    radius_log2 = ScaleExponentField(required=False)
    radius = RationalField(required=False)

    def validate_radius(self, value):
        if value < 0:
            raise serializers.ValidationError('Radius must be non-negative.')
        return value

    def validate(self, attrs):
        if ('radius_log2' in attrs) == ('radius' in attrs):
            raise serializers.ValidationError(
                'Give exactly one of `radius_log2` and `radius`.')
        return attrs

    def create(self, validated_data):
        return interval_from_data(validated_data)

    def to_representation(self, interval):
        data = {
            'center_num': str(interval.center.numerator),
            'center_exp': interval.center.exponent,
        }
        radius = interval.radius
        if isinstance(radius, ScaleExponent):
            data['radius_log2'] = str(radius)
        elif isinstance(radius, LogGaugeRadius):
            gauge = {'s': format_rational(radius.s)}
            if isinstance(radius.base, ScaleExponent):
                gauge['base_log2'] = str(radius.base)
            else:
                gauge['base'] = format_rational(radius.base)
            data['log_gauge'] = gauge
        elif isinstance(radius, PowerRadius):
            data['power_radius'] = {
                'base': format_rational(radius.base),
                's': format_rational(radius.s),
            }
        else:
            data['radius'] = format_rational(radius)
        return data


def interval_from_data(data):
    center = DyadicRational(data['center_num'], data['center_exp'])
    if 'radius_log2' in data:
        return Interval(center, data['radius_log2'])
    return Interval(center, Fraction(data['radius']))


class IntervalFamilySerializer(serializers.Serializer):
    intervals = IntervalSerializer(many=True)

    def create(self, validated_data):
        return IntervalFamily(tuple(
            interval_from_data(item)
            for item in validated_data['intervals']
        ))

    def to_representation(self, family):
        return {
            'intervals': [
                IntervalSerializer(member).data for member in family.members
            ],
        }


class MeasureEnclosureSerializer(serializers.Serializer):
    lo = RationalField()
    hi = RationalField()
    exact = serializers.BooleanField()
    width = RationalField()
    bits = serializers.IntegerField()
