"""
Tests for the management commands.
"""

import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from weakcoupling import WeakCouplingError
from weakcoupling.models import RunConfig, RunMode
from weakcoupling.services.serialization import CSV_HEADER


def run_command(name, *args):
    """call_command with captured stdout and stderr."""
    out, err = StringIO(), StringIO()
    call_command(name, *args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


class TestSobolevCommand:
    """Tests for `sobolev`."""

    def test_closed_form_1d(self):
        """d = 1 reports S = p / 2 without solving."""
        out, _ = run_command('sobolev', '--d', '1', '--p', '3')
        payload = json.loads(out)

        assert payload['S'] == 1.5
        assert payload['E1'] == pytest.approx(-0.7071067811865476)
        assert payload['method'] == 'closed-form'
        assert payload['closed_form']['S'] == 1.5

    def test_needs_p_above_d(self):
        """p <= d is a configuration error."""
        with pytest.raises(CommandError) as exc:
            run_command('sobolev', '--d', '2', '--p', '2')

        assert exc.value.returncode == 2


class TestSolveCommand:
    """Tests for `solve`."""

    def test_square_well(self):
        """The unit square well at alpha = 1 binds at about -0.4538."""
        out, _ = run_command('solve', '--d', '1', '--p', '2', '--potential', 'box:A=1,R=1')
        payload = json.loads(out)

        assert payload['potential'] == 'box:A=1.0,R=1.0'
        assert payload['analytic_integral'] == pytest.approx(2.0)
        assert payload['converged'] is True
        assert payload['lambda'] == pytest.approx(-0.4538, abs=2e-3)

    def test_csv_is_sweep_only(self):
        """Only sweeps can be written as CSV."""
        with pytest.raises(WeakCouplingError) as exc:
            RunConfig(mode=RunMode.SOLVE, fmt='csv')

        assert exc.value.code == 'INVALID_CONFIG'
        assert exc.value.exit_code == 2
        assert RunConfig(mode=RunMode.SOLVE).output_format == 'json'

    def test_format_flag(self):
        """--format json is accepted; --format csv is a configuration error."""
        out, _ = run_command('solve', '--potential', 'box:A=1,R=1', '--format', 'json')
        assert json.loads(out)['d'] == 1

        with pytest.raises(CommandError) as exc:
            run_command('solve', '--potential', 'box:A=1,R=1', '--format', 'csv')

        assert exc.value.returncode == 2

    def test_bad_potential(self):
        """A malformed descriptor exits with the configuration status."""
        with pytest.raises(CommandError) as exc:
            run_command('solve', '--potential', 'gaussian:A=')

        assert exc.value.returncode == 2
        assert 'position' in str(exc.value)

    def test_out_writes_file(self, tmp_path):
        """--out writes the artifact and reports on stderr."""
        path = tmp_path / 'state.json'

        out, err = run_command('solve', '--potential', 'box:A=1,R=1', '--out', str(path))

        assert out == ''
        assert 'wrote' in err
        assert json.loads(path.read_text())['d'] == 1


class TestSweepCommand:
    """Tests for `sweep`."""

    def test_empty_alphas(self):
        """An empty alpha list writes the header only."""
        out, _ = run_command('sweep', '--alphas=')

        assert out == ','.join(CSV_HEADER) + '\n'

    def test_json_format(self):
        """--format json carries the bounds and violation lists."""
        out, _ = run_command('sweep', '--alphas', '0.4,0.2', '--format', 'json',
                             '--potential', 'gaussian:A=0.3989422804014327,s=1')
        payload = json.loads(out)

        assert [r['alpha'] for r in payload['records']] == [0.4, 0.2]
        assert payload['monotone_violations'] == []
        assert payload['bound_violations'] == []
        assert len(payload['bounds']) == 2

    def test_nonpositive_integral(self):
        """The cancelling mix is rejected with the data status."""
        with pytest.raises(CommandError) as exc:
            run_command('sweep', '--alphas', '0.2,0.1', '--potential', 'mix:A1=2,s1=1,A2=1,s2=2')

        assert exc.value.returncode == 3


class TestFitCommand:
    """Tests for `fit`."""

    def test_missing_input(self, tmp_path):
        """An unreadable --input exits with the I/O status."""
        with pytest.raises(CommandError) as exc:
            run_command('fit', '--input', str(tmp_path / 'absent.csv'))

        assert exc.value.returncode == 4

    def test_malformed_csv_input(self, tmp_path):
        """A sweep file that does not parse exits with the data status."""
        path = tmp_path / 'sweep.csv'
        path.write_text(','.join(CSV_HEADER) + '\n0.3,not-a-number,1.0,1.0,0.0,10,true,10.0\n')

        with pytest.raises(CommandError) as exc:
            run_command('fit', '--input', str(path), '--integral', '1')

        assert exc.value.returncode == 3

    def test_malformed_json_input(self, tmp_path):
        """Broken JSON is a data error as well."""
        path = tmp_path / 'sweep.json'
        path.write_text('{"records": [')

        with pytest.raises(CommandError) as exc:
            run_command('fit', '--input', str(path), '--integral', '1', '--format', 'json')

        assert exc.value.returncode == 3

    def test_fit_from_csv(self, tmp_path):
        """A stored sweep is fitted with the given integral."""
        rows = [','.join(CSV_HEADER)]
        for alpha in (0.3, 0.2, 0.1, 0.05):
            lam = -alpha ** 2 / 4 * (1 + 0.5 * alpha)
            rows.append(f'{alpha!r},{lam!r},1.0,1.0,0.0,10,true,10.0')
        path = tmp_path / 'sweep.csv'
        path.write_text('\n'.join(rows) + '\n')

        out, _ = run_command('fit', '--input', str(path), '--integral', '1')
        payload = json.loads(out)

        assert payload['regime'] == 'subcritical'
        assert payload['fitted'] == pytest.approx(-0.25, rel=1e-8)
        assert payload['exponents']['expected_grad_norm'] == 1.0


class TestValidateCommand:
    """Tests for `validate`."""

    def test_all_checks_pass(self):
        """The built-in checks pass and are listed by name."""
        out, _ = run_command('validate')
        payload = json.loads(out)

        assert payload['passed'] is True
        assert [check['name'] for check in payload['checks']] == [
            'identity_chain', 'gradient', 'quadrature_order', 'linear_oracle', 'monotonicity',
        ]
