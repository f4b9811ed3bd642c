from rest_framework import serializers

from numerics.exceptions import DomainError
from numerics.serializers import RationalField

from .specs import parse_phi, parse_set


class PhiSpecField(serializers.Field):
    default_error_messages = {
        'invalid': 'Invalid approximation function: {error}',
    }

    def to_internal_value(self, data):
        try:
            return parse_phi(data)
        except DomainError as error:
            self.fail('invalid', error=error)

    def to_representation(self, value):
        return str(value)


class SetSpecField(serializers.Field):
    default_error_messages = {
        'invalid': 'Invalid limsup set: {error}',
    }

    def to_internal_value(self, data):
        try:
            return parse_set(data)
        except DomainError as error:
            self.fail('invalid', error=error)

    def to_representation(self, value):
        return str(value)


class AuditRowSerializer(serializers.Serializer):
    """CSV row: n, m, measure_Un, measure_Um, measure_intersection, ratio."""
    n = serializers.IntegerField()
    m = serializers.IntegerField()
    measure_Un = RationalField(source='measure_n')
    measure_Um = RationalField(source='measure_m')
    measure_intersection = RationalField(source='intersection')
    ratio = RationalField()


class QuasiIndependenceSerializer(serializers.Serializer):
    omega = serializers.CharField()
    nmax = serializers.IntegerField()
    measures = serializers.SerializerMethodField()
    rows = AuditRowSerializer(many=True)
    max_ratio = RationalField()
    argmax = serializers.ListField(child=serializers.IntegerField())
    overlap_constant = serializers.IntegerField()
    proof_bound = serializers.IntegerField()

    def get_measures(self, report):
        return [
            {'n': n, 'measure': RationalField().to_representation(measure)}
            for n, measure in report.measures
        ]


class TailCertificateSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    start = serializers.IntegerField()
    first_term_log2 = serializers.CharField(source='first_term')
    bound_log2 = serializers.CharField(source='bound')
