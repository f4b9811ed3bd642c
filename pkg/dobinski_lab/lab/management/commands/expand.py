from rest_framework import serializers

from expansion.grammar import format_program
from expansion.programs import digits
from expansion.runs import classify_membership, nearest_dyadic
from expansion.serializers import (DigitProgramField, ExpansionRowSerializer,
                                   MembershipVerdictSerializer)
from lab.base import LabCommand


class ExpandOptionsSerializer(serializers.Serializer):
    x = DigitProgramField()
    n = serializers.IntegerField(min_value=1, default=16)


class Command(LabCommand):
    help = 'Digit table of x: e_n, z_n, P_n(x) and |x - P_n(x)|.'
    options_serializer_class = ExpandOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--x', required=True, help='Digit program, e.g. "periodic:;01".')
        parser.add_argument('--n', type=int, help='Rows 1..n (default 16).')

    def get_results(self, data, config):
        program = data['x']
        rows = [
            {'n': n, 'digit': digit, 'nearest': nearest_dyadic(program, n)}
            for n, digit in enumerate(digits(program, data['n']), start=1)
        ]
        return {
            'x': format_program(program),
            'rows': ExpansionRowSerializer(rows, many=True).data,
            'membership': MembershipVerdictSerializer(
                classify_membership(program)).data,
        }

    def get_rows(self, results):
        return results['rows']
