from rest_framework import serializers

from gauge.gauges import LogPower, Power
from gauge.serializers import (GaugeField, PsiSpecField,
                               SeriesVerdictSerializer, format_critical)
from gauge.series import (critical_exponent, jarnik_critical_exponent,
                          jarnik_series, khintchine_series, series_classify)
from lab.base import LabCommand
from limsup.serializers import PhiSpecField, SetSpecField

GAUGE_FAMILIES = {'power': Power, 'log': LogPower}


class SeriesOptionsSerializer(serializers.Serializer):
    phi = PhiSpecField(required=False)
    set = SetSpecField(required=False)
    psi = PsiSpecField(required=False)
    gauge = GaugeField(required=False)
    critical = serializers.ChoiceField(
        choices=tuple(GAUGE_FAMILIES), required=False)
    horizon = serializers.IntegerField(min_value=2, default=30)

    def validate(self, attrs):
        given = [key for key in ('phi', 'set', 'psi') if key in attrs]
        if len(given) != 1:
            raise serializers.ValidationError(
                'Give exactly one of --phi, --set and --psi.')
        if 'set' in attrs:
            attrs['phi'] = attrs.pop('set').phi
        if 'phi' in attrs and not ('gauge' in attrs or 'critical' in attrs):
            raise serializers.ValidationError(
                'A phi series needs --gauge or --critical.')
        if 'psi' in attrs and 'critical' in attrs and 'gauge' not in attrs:
            attrs['jarnik'] = True
        return attrs


class Command(LabCommand):
    help = (
        'Convergence of the gauge series of a limsup set, or of the '
        'Khintchine (no gauge) and Jarnik series of psi.'
    )
    options_serializer_class = SeriesOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--phi', help='Approximation function phi.')
        parser.add_argument('--set', help='Limsup set; its phi is used.')
        parser.add_argument('--psi', help='Diophantine psi.')
        parser.add_argument('--gauge', help='Gauge "power:s" or "log:s".')
        parser.add_argument(
            '--critical', choices=tuple(GAUGE_FAMILIES),
            help='Report the critical exponent for this gauge family.')
        parser.add_argument(
            '--horizon', type=int, help='Trace terms (default 30).')

    def _verdict(self, data):
        gauge, horizon = data.get('gauge'), data['horizon']
        if 'phi' in data:
            if gauge is None:
                return None
            return series_classify(data['phi'], gauge, horizon)
        if gauge is None:
            if data.get('jarnik'):
                return None
            return khintchine_series(data['psi'], horizon)
        return jarnik_series(data['psi'], gauge, horizon)

    def _critical(self, data):
        if 'critical' not in data:
            return None
        family = GAUGE_FAMILIES[data['critical']]
        if 'phi' in data:
            return format_critical(critical_exponent(data['phi'], family))
        return format_critical(jarnik_critical_exponent(data['psi'], family))

    def get_results(self, data, config):
        verdict = self._verdict(data)
        return {
            'series': (None if verdict is None
                       else SeriesVerdictSerializer(verdict).data),
            'critical': self._critical(data),
        }

    def get_rows(self, results):
        if results['series'] is None:
            return [{'critical': results['critical']}]
        return results['series']['trace']
