"""
Report rendering: the JSON document {schema, command, config, results,
timings} or CSV rows ready for plotting.
"""
import csv
import io
import logging
from dataclasses import dataclass, field

from rest_framework.renderers import JSONRenderer

from numerics.conf import lab_setting

from .serializers import ReportSerializer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Report:
    command: str
    config: dict
    results: object
    timings: dict = field(default_factory=dict)
    schema: str = None

    def __post_init__(self):
        if self.schema is None:
            object.__setattr__(self, 'schema', lab_setting('REPORT_SCHEMA'))


def render_json(report):
    data = ReportSerializer(report).data
    return JSONRenderer().render(
        data, renderer_context={'indent': 2}).decode() + '\n'


def render_csv(rows):
    """Rows are dicts sharing the keys of the first one."""
    if not rows:
        return ''
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=list(rows[0]), lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({
            key: '' if value is None else value for key, value in row.items()
        })
    return buffer.getvalue()


def write_output(text, out, stream):
    """To the file `out` when given, to `stream` otherwise."""
    if out is None:
        stream.write(text, ending='')
        return
    with open(out, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info('Report written to %s', out)
