"""
Base class of the lab commands.

A command validates its own flags with `options_serializer_class` and
returns serialized results from `get_results`; the base class adds the
global flags, applies them as settings and renders the report.
"""
import time

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from numerics.conf import lab_overrides
from numerics.exceptions import LabError

from .reports import Report, render_csv, render_json, write_output
from .serializers import RunConfigSerializer

USAGE_ERROR = 1


def format_errors(detail):
    """One line out of nested DRF error details."""
    if isinstance(detail, dict):
        return '; '.join(
            f'{key}: {format_errors(value)}' for key, value in detail.items())
    if isinstance(detail, list):
        return ' '.join(format_errors(item) for item in detail)
    return str(detail)


class LabCommand(BaseCommand):
    requires_system_checks = []
    options_serializer_class = None

    @property
    def name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def add_arguments(self, parser):
        self.add_global_arguments(parser)
        self.add_command_arguments(parser)

    def add_global_arguments(self, parser, **kwargs):
        """
        Flags shared by every command. Sub-parsers add them again with
        `default=argparse.SUPPRESS` so they can follow the action.
        """
        parser.add_argument(
            '--precision', type=int, **kwargs,
            help='Decimal digits of floating evaluations (>= 10).')
        parser.add_argument(
            '--exponent-cap', type=int, dest='exponent_cap', **kwargs,
            help='Largest exponent E materialized as 2^-E (>= 2^10).')
        parser.add_argument(
            '--seed', type=int, **kwargs, help='Seed of random probes.')
        parser.add_argument(
            '--out', **kwargs, help='Write the report to this file.')
        parser.add_argument('--format', choices=('json', 'csv'), **kwargs)
        parser.add_argument(
            '--timings', action='store_true', **kwargs,
            help='Add wall-clock timings to the report.')

    def add_command_arguments(self, parser):
        pass

    def get_config(self, options):
        serializer = RunConfigSerializer(data={
            key: options[key] for key in RunConfigSerializer().fields
            if options.get(key) is not None
        })
        if not serializer.is_valid():
            raise CommandError(
                f'Invalid flags: {format_errors(serializer.errors)}',
                returncode=USAGE_ERROR)
        return serializer.validated_data

    def get_options(self, options):
        """Command flags validated by `options_serializer_class`."""
        fields = self.options_serializer_class().fields
        serializer = self.options_serializer_class(data={
            key: value for key, value in options.items()
            if key in fields and value is not None
        })
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data

    def get_results(self, data, config):
        raise NotImplementedError

    def get_rows(self, results):
        """CSV rows; by default the scalar part of the results."""
        return [{
            key: value for key, value in results.items()
            if not isinstance(value, (dict, list))
        }]

    def handle(self, *args, **options):
        config = self.get_config(options)
        started = time.perf_counter()
        try:
            with lab_overrides(PRECISION=config['precision'],
                               EXPONENT_CAP=config['exponent_cap']):
                data = self.get_options(options)
                results = self.get_results(data, config)
        except serializers.ValidationError as error:
            raise CommandError(
                f'Invalid input: {format_errors(error.detail)}',
                returncode=USAGE_ERROR)
        except LabError as error:
            raise CommandError(
                f'{type(error).__name__}: {error}',
                returncode=error.exit_code)
        timings = {}
        if config['timings']:
            timings['total_seconds'] = time.perf_counter() - started
        if config['format'] == 'csv':
            text = render_csv(self.get_rows(results))
        else:
            text = render_json(Report(
                self.name,
                {key: value for key, value in config.items()
                 if key != 'out'},
                results, timings,
            ))
        write_output(text, config['out'], self.stdout)
