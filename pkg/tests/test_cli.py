import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from lab.cli import run

ONE_THIRD = 'periodic:;01'


def run_lab(*argv):
    stdout, stderr = StringIO(), StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class TestExitCodes:

    @pytest.mark.parametrize('argv', [
        (),
        ('launch',),
        ('expand', '--x', ONE_THIRD, '--n', 'many'),
        ('expand', '--x', ONE_THIRD, '--n', '0'),
        ('expand', '--x', 'decimal:0.5'),
        ('expand', '--x', ONE_THIRD, '--precision', '5'),
        ('quasi', '--omega', 'half'),
    ])
    def test_usage_errors(self, argv):
        code, stdout, _ = run_lab(*argv)
        assert code == 1, (
            f'Check that `{" ".join(argv)}` is a usage error with exit code '
            f'1, got {code}.'
        )
        assert stdout == ''

    def test_domain_error(self):
        code, _, stderr = run_lab('product', '--x', 'finite:1')
        assert code == 2, (
            'Check that the tangent product at a dyadic point exits with '
            f'code 2, got {code}.'
        )
        assert 'DomainError' in stderr

    def test_cap_error(self):
        code, _, stderr = run_lab(
            'willow', 'plan', '--mode', 'true-dobinski', '--generations', '3')
        assert code == 3, (
            'Check that a third generation of the true schedule exits with '
            f'code 3, got {code}.'
        )
        assert 'ExponentCapError' in stderr

    def test_call_command_raises(self):
        with pytest.raises(CommandError) as error:
            call_command('product', '--x', 'finite:1', stdout=StringIO())
        assert error.value.returncode == 2


class TestReports:

    def test_expand(self):
        code, stdout, _ = run_lab('expand', '--x', ONE_THIRD, '--n', '8')
        assert code == 0
        report = json.loads(stdout)
        assert report['schema'] == 'dobinski-lab/1', (
            'Check that every report carries its schema version.'
        )
        assert report['command'] == 'expand'
        assert report['timings'] == {}, (
            'Check that timings stay empty unless --timings is given.'
        )
        rows = report['results']['rows']
        assert [row['n'] for row in rows] == list(range(1, 9))
        assert all(row['z'] == '1' for row in rows), (
            'Check that every row of 1/3 has z_n = 1.'
        )
        assert rows[1]['distance'] == '1/12'
        assert report['results']['membership']['verdict']

    def test_quasi(self):
        code, stdout, _ = run_lab('quasi', '--omega', '1/4', '--nmax', '12')
        assert code == 0
        audit = json.loads(stdout)['results']['audit']
        assert len(audit['rows']) == 66
        assert 0 < eval_rational(audit['max_ratio']) <= 2, (
            'Check that every ratio of omega = 1/4 is at most 2.'
        )
        assert audit['overlap_constant'] == 2

    def test_quasi_tail(self):
        code, stdout, _ = run_lab(
            'quasi', '--omega', '1/4', '--nmax', '4', '--tail-k', '1')
        assert code == 0
        tail = json.loads(stdout)['results']['tail']
        assert (tail['k'], tail['start']) == (1, 6)

    def test_classify_shifted_schedule(self):
        code, stdout, _ = run_lab(
            'classify', '--x',
            'schedule:fill=10;geom(n1=1,ratio=2,k=4,digit=0);offset=3')
        assert code == 0
        verdict = json.loads(stdout)['results']['verdict']
        assert (verdict['limsup'], verdict['k']) == ('2', 1), (
            'Check that the offset of a generated schedule scales its '
            f'limsup, got {verdict}.'
        )

    def test_product(self):
        code, stdout, _ = run_lab('product', '--x', ONE_THIRD, '--n', '20')
        assert code == 0
        trace = json.loads(stdout)['results']['trace']
        assert len(trace) == 21
        error = float(trace[-1]['error'])
        assert 1e-6 < error < 2e-6, (
            'Check that the error of 1/3 at n = 20 is about 1.57e-6, '
            f'got {error}.'
        )

    def test_willow_plan(self):
        code, stdout, _ = run_lab(
            'willow', 'plan', '--mode', 'true-dobinski', '--generations', '2')
        assert code == 0
        results = json.loads(stdout)['results']
        second = results['schedule']['generations'][1]
        assert second['M_k'] == str((1 << 37) + 1), (
            'Check that huge family counts travel as exact strings.'
        )
        assert results['constraints']['passed'] is True
        assert results['ratio_uniformity'] == 'uniform', (
            'Check that the true schedule reports non-growing ratios.'
        )

    def test_willow_audit(self):
        code, stdout, _ = run_lab(
            'willow', 'audit', '--generations', '2', '--probes', '50',
            '--seed', '7')
        assert code == 0
        results = json.loads(stdout)['results']
        assert results['audit']['seed'] == 7
        assert results['tree']['conservation_defects'] == 0
        assert results['audit']['uniformity'] == 'not-uniform', (
            'Check that growing tamed maxima are reported in the audit.'
        )

    def test_repeatable(self):
        argv = ('willow', 'audit', '--generations', '2', '--probes', '100')
        first, second = run_lab(*argv), run_lab(*argv)
        assert first[1] == second[1], (
            'Check that two runs with the same flags print identical reports.'
        )

    def test_csv(self):
        code, stdout, _ = run_lab(
            'expand', '--x', ONE_THIRD, '--n', '4', '--format', 'csv')
        assert code == 0
        lines = stdout.splitlines()
        assert lines[0] == 'n,digit,z,p_n,distance', (
            f'Check the CSV header of the digit table, got {lines[0]}.'
        )
        assert len(lines) == 5

    def test_out_file(self, tmp_path):
        path = tmp_path / 'report.json'
        code, stdout, _ = run_lab(
            'expand', '--x', ONE_THIRD, '--n', '3', '--out', str(path))
        assert code == 0
        assert stdout == '', (
            'Check that --out sends the report to the file only.'
        )
        report = json.loads(path.read_text(encoding='utf-8'))
        assert 'out' not in report['config']

    def test_cover_family_file(self, tmp_path):
        path = tmp_path / 'family.json'
        path.write_text(json.dumps({'intervals': [
            {'center_num': '1', 'center_exp': 2, 'radius_log2': '3'},
            {'center_num': '3', 'center_exp': 2, 'radius_log2': '3'},
        ]}), encoding='utf-8')
        code, stdout, _ = run_lab(
            'cover', '--family', str(path), '--scales', '2')
        assert code == 0
        results = json.loads(stdout)['results']
        assert results['intervals'] == 2
        assert results['measure']['lo'] == '1/2', (
            'Check that two disjoint intervals of length 1/4 measure 1/2.'
        )
        assert results['counts'] == [{'m': 2, 'boxes': 4, 'balls': 2}]

    def test_cover_grid_under_square_root(self):
        code, stdout, _ = run_lab(
            'cover', '--set', 'grid:1/4', '--n', '2', '--gauge', 'power:1/2')
        assert code == 0, (
            'Check that a power gauge with a fractional exponent dilates '
            f'the rational radii of a grid, got exit code {code}.'
        )
        results = json.loads(stdout)['results']
        assert results['covering_sum']['lo'] == '5/4', (
            'Check that five radii 1/16 give a square-root sum of 5/4.'
        )
        assert results['dilated_measure']['lo'] == '1'

    def test_cover_family_invalid(self, tmp_path):
        path = tmp_path / 'family.json'
        path.write_text(json.dumps({'intervals': [
            {'center_num': '1', 'center_exp': 2},
        ]}), encoding='utf-8')
        code, _, stderr = run_lab('cover', '--family', str(path))
        assert code == 1, (
            'Check that a family member without a radius is a usage error.'
        )
        assert 'radius' in stderr

    def test_timings(self):
        code, stdout, _ = run_lab(
            'expand', '--x', ONE_THIRD, '--n', '3', '--timings')
        assert code == 0
        timings = json.loads(stdout)['timings']
        assert timings and all(value >= 0 for value in timings.values())


def eval_rational(text):
    numerator, _, denominator = text.partition('/')
    return int(numerator) / int(denominator or 1)
