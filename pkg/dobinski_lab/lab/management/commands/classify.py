from rest_framework import serializers

from expansion.grammar import format_program
from expansion.runs import classify_membership
from expansion.serializers import (DigitProgramField,
                                   MembershipVerdictSerializer)
from lab.base import LabCommand
from limsup.serializers import SetSpecField
from limsup.stages import membership_in_stage


class ClassifyOptionsSerializer(serializers.Serializer):
    x = DigitProgramField()
    set = SetSpecField(required=False)
    stages = serializers.ListField(
        child=serializers.IntegerField(min_value=1), default=list)

    def validate(self, attrs):
        if attrs['stages'] and 'set' not in attrs:
            raise serializers.ValidationError(
                'Stage memberships need --set.')
        return attrs


class Command(LabCommand):
    help = (
        'Membership of x in the Dobinski set D(k), and optionally in the '
        'stages of a limsup set.'
    )
    options_serializer_class = ClassifyOptionsSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--x', required=True, help='Digit program.')
        parser.add_argument(
            '--set', help='Limsup set, e.g. "dobinski:1" or "grid:1/4".')
        parser.add_argument(
            '--stages', type=int, nargs='+', help='Stages n to test.')

    def get_results(self, data, config):
        program = data['x']
        return {
            'x': format_program(program),
            'verdict': MembershipVerdictSerializer(
                classify_membership(program)).data,
            'stages': [
                {
                    'n': n,
                    'member': membership_in_stage(
                        program, data['set'], n).value,
                }
                for n in data['stages']
            ],
        }

    def get_rows(self, results):
        if results['stages']:
            return results['stages']
        return [results['verdict']]
