from rest_framework import serializers

from gauge.boxdim import (LOGARITHMIC, ORDINARY, box_count, cover_count,
                          dim_fit, natural_cover)
from gauge.serializers import FitReportSerializer
from lab.base import LabCommand
from limsup.serializers import SetSpecField
from limsup.stages import stage_family

COUNTERS = {'boxes': box_count, 'balls': cover_count}


class BoxdimOptionsSerializer(serializers.Serializer):
    set = SetSpecField()
    n = serializers.IntegerField(min_value=1, required=False)
    scales = serializers.ListField(
        child=serializers.IntegerField(min_value=0), default=list)
    stages = serializers.ListField(
        child=serializers.IntegerField(min_value=1), default=list)
    mode = serializers.ChoiceField(
        choices=(ORDINARY, LOGARITHMIC), default=ORDINARY)
    counter = serializers.ChoiceField(choices=tuple(COUNTERS), default='boxes')

    def validate(self, attrs):
        if bool(attrs['stages']) == ('n' in attrs):
            raise serializers.ValidationError(
                'Give either --n with --scales, or --stages.')
        if 'n' in attrs and not attrs['scales']:
            raise serializers.ValidationError('--n needs --scales.')
        return attrs


class Command(LabCommand):
    help = (
        'Least-squares dimension fit: counts of one stage over several '
        'scales, or natural covers over several stages.'
    )
    options_serializer_class = BoxdimOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--set', required=True, help='Limsup set.')
        parser.add_argument('--n', type=int, help='Stage to count.')
        parser.add_argument(
            '--scales', type=int, nargs='+', help='Scales m of 2^-m.')
        parser.add_argument(
            '--stages', type=int, nargs='+',
            help='Stages sampled through their natural covers.')
        parser.add_argument('--mode', choices=(ORDINARY, LOGARITHMIC))
        parser.add_argument('--counter', choices=tuple(COUNTERS))

    def _samples(self, data, config):
        spec = data['set']
        if data['stages']:
            return [
                (scale.value, count) for count, scale in (
                    natural_cover(spec, n) for n in data['stages'])
            ]
        family = stage_family(spec, data['n'], config['exponent_cap'])
        counter = COUNTERS[data['counter']]
        return [
            (m, counter(family, m, config['exponent_cap']))
            for m in data['scales']
        ]

    def get_results(self, data, config):
        report = dim_fit(self._samples(data, config), data['mode'])
        return {
            'set': str(data['set']),
            'mode': data['mode'],
            'fit': FitReportSerializer(report).data,
        }

    def get_rows(self, results):
        return [
            {'scale': scale, 'count': count}
            for scale, count in results['fit']['samples']
        ]
