"""
Programmatic entry point: `run(argv)` runs one lab command and returns its
exit code (0 ok, 1 usage, 2 domain error, 3 cap or precision limit).
"""
import os
import sys

import django
from django.core.management import call_command
from django.core.management.base import CommandError

COMMANDS = (
    'expand', 'product', 'classify', 'cover', 'series',
    'quasi', 'willow', 'boxdim', 'bell',
)


def setup():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'dobinski_lab.settings')
    django.setup()


def run(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in COMMANDS:
        stderr.write(
            'Usage: <command> [flags], command one of '
            f'{", ".join(COMMANDS)}\n')
        return 1
    setup()
    command, *args = argv
    try:
        call_command(command, *args, stdout=stdout, stderr=stderr)
    except CommandError as error:
        stderr.write(f'{error}\n')
        return error.returncode
    except SystemExit as error:
        # argparse exits on --help and on sub-parser usage errors.
        return 0 if error.code in (None, 0) else 1
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
