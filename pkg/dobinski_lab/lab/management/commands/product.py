from rest_framework import serializers

from expansion.grammar import format_program
from expansion.serializers import DigitProgramField
from identity.product import (direct_product, identity_trace,
                              tail_factor_bound)
from identity.serializers import (ProductTraceSerializer, TailBoundSerializer,
                                  format_mpf)
from lab.base import LabCommand


class ProductOptionsSerializer(serializers.Serializer):
    x = DigitProgramField()
    n = serializers.IntegerField(min_value=0, default=20)
    oracle = serializers.BooleanField(default=False)


class Command(LabCommand):
    help = (
        'Partial products of |tan(2^j pi x)|^(2^-j) for stages 0..n '
        'against 4 sin^2(pi x), with tail factor bounds.'
    )
    options_serializer_class = ProductOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--x', required=True, help='Digit program.')
        parser.add_argument('--n', type=int, help='Last stage (default 20).')
        parser.add_argument(
            '--oracle', action='store_true',
            help='Add the factor-by-factor product at stage n.')

    def get_results(self, data, config):
        program, n = data['x'], data['n']
        stages = range(n + 1)
        results = {
            'x': format_program(program),
            'trace': ProductTraceSerializer(
                identity_trace(program, stages), many=True).data,
            'tail_bounds': TailBoundSerializer(
                [tail_factor_bound(program, stage) for stage in stages],
                many=True).data,
        }
        if data['oracle']:
            results['oracle'] = format_mpf(
                direct_product(program, n), config['precision'])
        return results

    def get_rows(self, results):
        return results['trace']
