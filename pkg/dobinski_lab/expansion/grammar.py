"""
One-line text form of digit programs:

    finite:<bits>
    periodic:<prefix>;<period>
    schedule:fill=<bits>;runs=[(n,L,b),...]
    schedule:fill=<bits>;geom(n1=<int>,ratio=<int>,k=<int>,digit=<0|1>)
    schedule:fill=<bits>;linear(n1=<int>,ratio=<int>,slope=<p/q>,digit=<0|1>)

Schedules accept a trailing `;offset=<int>` (the form shift() produces).
"""
import re

from numerics.exceptions import DomainError
from numerics.scale import format_rational, parse_rational

from .programs import (EventuallyPeriodic, Finite, GeometricRuns,
                       LinearRuns, Run, RunSchedule)

FINITE = re.compile(r'^finite:(?P<bits>[01]*)$')
PERIODIC = re.compile(r'^periodic:(?P<prefix>[01]*);(?P<period>[01]+)$')
SCHEDULE = re.compile(
    r'^schedule:fill=(?P<fill>[01]+);(?P<runs>.+?)'
    r'(?:;offset=(?P<offset>\d+))?$'
)
EXPLICIT_RUNS = re.compile(r'^runs=\[(?P<body>.*)\]$')
RUN = re.compile(r'\(\s*(\d+)\s*,\s*(\d+)\s*,\s*([01])\s*\)')
GENERATOR = re.compile(r'^(?P<kind>geom|linear)\((?P<arguments>[^)]*)\)$')
GENERATOR_KEYS = {
    'geom': ('n1', 'ratio', 'k', 'digit'),
    'linear': ('n1', 'ratio', 'slope', 'digit'),
}


class ProgramSyntaxError(DomainError):
    pass


def _arguments(kind, text):
    arguments = {}
    for item in filter(None, (part.strip() for part in text.split(','))):
        key, separator, value = item.partition('=')
        if not separator:
            raise ProgramSyntaxError(f'Expected key=value, got `{item}`.')
        arguments[key.strip()] = value.strip()
    expected = GENERATOR_KEYS[kind]
    if set(arguments) != set(expected):
        raise ProgramSyntaxError(
            f'`{kind}` takes exactly {", ".join(expected)}.')
    try:
        if kind == 'geom':
            return GeometricRuns(*(int(arguments[key]) for key in expected))
        return LinearRuns(
            int(arguments['n1']),
            int(arguments['ratio']),
            parse_rational(arguments['slope']),
            int(arguments['digit']),
        )
    except ValueError as error:
        raise ProgramSyntaxError(str(error))


def _runs(text):
    match = EXPLICIT_RUNS.match(text)
    if match:
        body = match.group('body')
        if RUN.sub('', body).replace(',', '').strip():
            raise ProgramSyntaxError(f'Malformed run list `{body}`.')
        return tuple(
            Run(int(n), int(length), int(digit))
            for n, length, digit in RUN.findall(body)
        )
    match = GENERATOR.match(text)
    if match:
        return _arguments(match.group('kind'), match.group('arguments'))
    raise ProgramSyntaxError(f'Unknown run description `{text}`.')


def parse_program(text):
    text = ''.join(str(text).split())
    match = FINITE.match(text)
    if match:
        return Finite(match.group('bits'))
    match = PERIODIC.match(text)
    if match:
        return EventuallyPeriodic(match.group('prefix'), match.group('period'))
    match = SCHEDULE.match(text)
    if match:
        return RunSchedule(
            match.group('fill'),
            _runs(match.group('runs')),
            int(match.group('offset') or 0),
        )
    raise ProgramSyntaxError(f'`{text}` is not a digit program.')


def format_program(program):
    if isinstance(program, Finite):
        return f'finite:{program.bits}'
    if isinstance(program, EventuallyPeriodic):
        return f'periodic:{program.prefix};{program.period}'
    runs = program.runs
    if isinstance(runs, GeometricRuns):
        body = (f'geom(n1={runs.n1},ratio={runs.ratio},k={runs.k},'
                f'digit={runs.digit})')
    elif isinstance(runs, LinearRuns):
        body = (f'linear(n1={runs.n1},ratio={runs.ratio},'
                f'slope={format_rational(runs.slope)},digit={runs.digit})')
    else:
        body = 'runs=[{}]'.format(','.join(
            f'({run.position},{run.length},{run.digit})' for run in runs))
    text = f'schedule:fill={program.fill};{body}'
    if program.offset:
        text += f';offset={program.offset}'
    return text
