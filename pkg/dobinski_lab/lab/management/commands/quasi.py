from rest_framework import serializers

from lab.base import LabCommand
from limsup.audit import quasi_independence_audit
from limsup.serializers import (QuasiIndependenceSerializer,
                                TailCertificateSerializer)
from limsup.specs import parse_phi
from limsup.stages import borel_cantelli_tail
from numerics.exceptions import DomainError
from numerics.scale import parse_rational


class QuasiOptionsSerializer(serializers.Serializer):
    omega = serializers.CharField()
    nmax = serializers.IntegerField(min_value=2, default=12)
    tail_k = serializers.IntegerField(min_value=1, required=False)
    tail_from = serializers.IntegerField(min_value=1, default=6)

    def validate_omega(self, value):
        """A constant rational or an approximation function."""
        try:
            if ':' in value:
                return parse_phi(value)
            return parse_rational(value)
        except DomainError as error:
            raise serializers.ValidationError(str(error))


class Command(LabCommand):
    help = (
        'Exact quasi-independence ratios |U_n & U_m| / (|U_n| |U_m|) of the '
        'grid sets of omega, with an optional Borel-Cantelli tail bound.'
    )
    options_serializer_class = QuasiOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--omega', required=True,
            help='Constant "1/4" or approximation function "rational:1,1".')
        parser.add_argument('--nmax', type=int, help='Largest stage.')
        parser.add_argument(
            '--tail-k', type=int, dest='tail_k',
            help='Bound the sum of |A_(n,k)| for this k.')
        parser.add_argument(
            '--tail-from', type=int, dest='tail_from',
            help='First stage of the tail (default 6).')

    def get_results(self, data, config):
        report = quasi_independence_audit(data['omega'], data['nmax'])
        results = {'audit': QuasiIndependenceSerializer(report).data}
        if 'tail_k' in data:
            results['tail'] = TailCertificateSerializer(
                borel_cantelli_tail(data['tail_k'], data['tail_from'])).data
        return results

    def get_rows(self, results):
        return results['audit']['rows']
