import argparse

from rest_framework import serializers

from gauge.gauges import LogPower
from gauge.serializers import GaugeField
from lab.base import LabCommand
from willow.audit import (frostman_audit, frostman_hypothesis,
                          ratio_uniformity, symbolic_generation_ratios)
from willow.build import frostman_measure
from willow.constraints import plan_schedule
from willow.schedule import MODES, TAMED_MODE
from willow.serializers import (ConstraintReportSerializer,
                                FrostmanAuditSerializer,
                                GenerationRatioSerializer,
                                HypothesisCheckSerializer,
                                MeasureTreeSerializer,
                                WillowScheduleSerializer)

ACTIONS = {
    'plan': 'Plan a schedule and check constraints (A)-(D).',
    'build': 'Build the Frostman measure tree of a tamed schedule.',
    'audit': 'Audit mu(I) / h(|I|) over the tree and random probes.',
}


class WillowOptionsSerializer(serializers.Serializer):
    action = serializers.ChoiceField(choices=tuple(ACTIONS))
    mode = serializers.ChoiceField(choices=MODES, default=TAMED_MODE)
    c = serializers.IntegerField(min_value=1, default=2)
    generations = serializers.IntegerField(min_value=1, default=2)
    n1 = serializers.IntegerField(min_value=0, default=3)
    m1 = serializers.IntegerField(min_value=1, required=False)
    gauge = GaugeField(default=LogPower(1))
    probes = serializers.IntegerField(min_value=0, default=1000)


class Command(LabCommand):
    help = 'Willow sets: schedules, measure trees and Frostman audits.'
    options_serializer_class = WillowOptionsSerializer

    def add_command_arguments(self, parser):
        actions = parser.add_subparsers(dest='action', required=True)
        for action, text in ACTIONS.items():
            subparser = actions.add_parser(action, help=text)
            subparser.add_argument('--mode', choices=MODES)
            subparser.add_argument(
                '--c', type=int, help='Constant of the tamed schedule.')
            subparser.add_argument(
                '--generations', type=int, help='Number K of generations.')
            subparser.add_argument('--n1', type=int, help='Seed n_1.')
            subparser.add_argument(
                '--m1', type=int, help='Seed M_1 (default 2).')
            subparser.add_argument(
                '--gauge', help='Gauge of the audit (default "log:1").')
            subparser.add_argument(
                '--probes', type=int, help='Random probes (default 1000).')
            self.add_global_arguments(subparser, default=argparse.SUPPRESS)

    def get_results(self, data, config):
        mode = data['mode']
        schedule, report = plan_schedule(
            mode, data['generations'], data['n1'], data.get('m1'),
            c=data['c'] if mode == TAMED_MODE else None,
        )
        results = {'schedule': WillowScheduleSerializer(schedule).data}
        gauge = data['gauge']
        if data['action'] == 'plan':
            results['constraints'] = ConstraintReportSerializer(report).data
            results['hypothesis'] = HypothesisCheckSerializer(
                frostman_hypothesis(schedule, gauge), many=True).data
            ratios = symbolic_generation_ratios(schedule, gauge)
            results['generation_ratios'] = GenerationRatioSerializer(
                ratios, many=True).data
            results['ratio_uniformity'] = ratio_uniformity(
                row.ratio for row in ratios).value
            return results
        tree = frostman_measure(schedule)
        results['tree'] = MeasureTreeSerializer(tree).data
        if data['action'] == 'audit':
            results['audit'] = FrostmanAuditSerializer(frostman_audit(
                tree, gauge, data['probes'], config['seed'])).data
        return results

    def get_rows(self, results):
        if 'constraints' in results:
            return results['constraints']['results']
        if 'audit' in results:
            return results['audit']['generations']
        return results['tree']['generations']
