from rest_framework import serializers

from identity.bell import bell_number, bell_numbers
from identity.serializers import BellSerializer, format_mpf
from lab.base import LabCommand


class BellOptionsSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=0)
    mode = serializers.ChoiceField(
        choices=('recurrence', 'series'), default='recurrence')
    terms = serializers.IntegerField(min_value=1, required=False)
    count = serializers.IntegerField(min_value=1, required=False)


class Command(LabCommand):
    help = 'Bell numbers by recurrence or by the truncated Dobinski series.'
    options_serializer_class = BellOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--mode', choices=('recurrence', 'series'))
        parser.add_argument(
            '--terms', type=int, help='Series terms (default max(2n, n+20)).')
        parser.add_argument(
            '--count', type=int, help='Also list B_0 .. B_(count-1).')

    def get_results(self, data, config):
        n, mode = data['n'], data['mode']
        estimate = bell_number(n, mode, data.get('terms'), config['precision'])
        if mode == 'recurrence':
            bell = {'n': n, 'mode': mode, 'value': str(estimate),
                    'truncation_bound': None}
        else:
            bell = {
                'n': n, 'mode': mode,
                'value': format_mpf(estimate.value, config['precision']),
                'truncation_bound': format_mpf(estimate.truncation_bound, 6),
            }
        results = {'bell': BellSerializer(bell).data}
        if 'count' in data:
            results['numbers'] = [
                str(number) for number in bell_numbers(data['count'])]
        return results

    def get_rows(self, results):
        return [results['bell']]
