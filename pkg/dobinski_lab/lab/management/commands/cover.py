import json

from rest_framework import serializers

from gauge.boxdim import (LOGARITHMIC, ORDINARY, box_count, cover_count,
                          natural_cover, single_scale_ratio)
from gauge.gauges import covering_sum
from gauge.serializers import GaugeField
from lab.base import LabCommand
from limsup.serializers import SetSpecField
from limsup.stages import dilate_by_gauge, stage_family
from numerics.measure import exact_measure
from numerics.serializers import (IntervalFamilySerializer,
                                  MeasureEnclosureSerializer)


class CoverOptionsSerializer(serializers.Serializer):
    set = SetSpecField(required=False)
    n = serializers.IntegerField(min_value=1, required=False)
    family = serializers.CharField(required=False)
    scales = serializers.ListField(
        child=serializers.IntegerField(min_value=0), default=list)
    gauge = GaugeField(required=False)
    natural = serializers.BooleanField(default=False)

    def validate(self, attrs):
        if ('family' in attrs) == ('set' in attrs and 'n' in attrs):
            raise serializers.ValidationError(
                'Give either --set with --n, or --family.')
        if attrs['natural'] and 'family' in attrs:
            raise serializers.ValidationError(
                '--natural needs a limsup set.')
        return attrs

    def validate_family(self, value):
        """A JSON file holding {"intervals": [...]}."""
        try:
            with open(value, encoding='utf-8') as handle:
                data = json.load(handle)
        except (OSError, ValueError) as error:
            raise serializers.ValidationError(
                f'Cannot read `{value}`: {error}')
        serializer = IntervalFamilySerializer(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.save()


class Command(LabCommand):
    help = (
        'Stage n of a limsup set or a JSON interval family: measure, box '
        'and ball counts at 2^-m, gauge sums, or the natural single-scale '
        'cover in exponent space.'
    )
    options_serializer_class = CoverOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--set', help='Limsup set.')
        parser.add_argument('--n', type=int, help='Stage.')
        parser.add_argument(
            '--family', help='JSON file of an interval family instead.')
        parser.add_argument(
            '--scales', type=int, nargs='+', help='Box scales m.')
        parser.add_argument(
            '--gauge', help='Gauge "power:s" or "log:s" for cover sums.')
        parser.add_argument(
            '--natural', action='store_true',
            help='Only the cover by the stage balls, never enumerated.')

    def _natural(self, spec, n):
        count, scale = natural_cover(spec, n)
        return {
            'count': str(count),
            'scale_log2': str(scale),
            'ratio': single_scale_ratio(count, scale, ORDINARY),
            'log_ratio': single_scale_ratio(count, scale, LOGARITHMIC),
        }

    def get_results(self, data, config):
        if 'family' in data:
            family = data['family']
            results = {'intervals': len(family)}
        else:
            spec, n = data['set'], data['n']
            results = {'set': str(spec), 'n': n}
            if data['natural']:
                results['natural'] = self._natural(spec, n)
                return results
            family = stage_family(spec, n, config['exponent_cap'])
        results['measure'] = MeasureEnclosureSerializer(
            exact_measure(family)).data
        results['counts'] = [
            {
                'm': m,
                'boxes': box_count(family, m, config['exponent_cap']),
                'balls': cover_count(family, m, config['exponent_cap']),
            }
            for m in data['scales']
        ]
        gauge = data.get('gauge')
        if gauge is not None:
            results['gauge'] = str(gauge)
            results['covering_sum'] = MeasureEnclosureSerializer(
                covering_sum(family, gauge)).data
            results['dilated_measure'] = MeasureEnclosureSerializer(
                exact_measure(dilate_by_gauge(family, gauge))).data
        return results

    def get_rows(self, results):
        if 'natural' in results:
            return [{'n': results['n'], **results['natural']}]
        return results['counts']
