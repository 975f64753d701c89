# Copyright 2024 BDP Ecosystem Limited. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

import json

import pytest

from schurample import _environ as environ
from schurample.cli import EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_PASS, build_parser, main, render_table


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBounds:
    def test_reference(self, capsys):
        code, out, _ = _run(capsys, 'bounds', '5', '2', '1,1')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['bound'] == str(233846053 ** 2)
        assert data['bound_approx'] == '5.468e16'
        assert data['primitive'] == [1, 1]
        assert len(data['plan']) == 2

    def test_ledger_and_variant(self, capsys):
        code, out, _ = _run(capsys, 'bounds', '5', '2', '2,2', '--ledger', '--intro-variant')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['primitive'] == [1, 1]
        assert data['ledger']['r'] == '11595673'
        assert data['corollary_ledger']['u'] == str(60 * 11 ** 5 - 1)
        assert data['intro_variant']['bound'] == str((1 + 12 * 11 ** 6) ** 2)

    def test_ledger_follows_primitive(self, capsys):
        _, scaled, _ = _run(capsys, 'bounds', '5', '2', '2,2', '--ledger')
        _, base, _ = _run(capsys, 'bounds', '5', '2', '1,1', '--ledger')
        scaled, base = json.loads(scaled), json.loads(base)
        assert scaled['ledger']['r'] == base['ledger']['r']
        assert scaled['bound'] == base['bound']
        assert scaled['corollary_ledger'] == base['corollary_ledger']

    def test_codimension_error(self, capsys):
        code, out, err = _run(capsys, 'bounds', '5', '1', '1')
        assert code == EXIT_INPUT
        assert out == ''
        assert err.startswith('[error]')

    def test_bad_partition(self, capsys):
        code, _, err = _run(capsys, 'bounds', '5', '2', '1,2')
        assert code == EXIT_INPUT
        assert '[error]' in err

    def test_table(self, capsys):
        code, out, _ = _run(capsys, 'bounds', '5', '2', '1,1', '--format', 'table')
        assert code == EXIT_PASS
        assert any(line.startswith('bound_approx') and line.endswith('5.468e16') for line in out.splitlines())


class TestOtherCommands:
    def test_vanishing(self, capsys):
        code, out, _ = _run(capsys, 'vanishing', '10', '4', '3', '--audit', '8')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['vanishes'] is True
        assert data['regime'] == 'vanishing'
        assert data['audit']['passed'] is True

    def test_vanishing_fails(self, capsys):
        code, out, _ = _run(capsys, 'vanishing', '6', '4', '2')
        data = json.loads(out)
        assert code == EXIT_PASS
        assert data['vanishes'] is False
        assert data['regime'] == 'ample-possible'

    def test_hyperbolicity(self, capsys):
        code, out, _ = _run(capsys, 'hyperbolicity', '5')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['d_N'] == str(6 ** 16)
        assert data['d_N_prime'] == str(12 * 11 ** 6)
        assert data['within_majorant'] is False

    def test_schur_dim(self, capsys):
        code, out, _ = _run(capsys, 'schur-dim', '1,1', '4')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['schur_dim'] == '6'
        assert data['quotient_bound']['ok'] is True


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = _run(capsys, 'verify', 'cocycle', '--samples', '3', '--seed', '1')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['passed'] is True
        assert data['seed'] == 1

    def test_counterexample(self, capsys):
        code, out, _ = _run(capsys, 'verify', 'star', '--zero-params', '--samples', '1', '--N', '2')
        assert code == EXIT_COUNTEREXAMPLE
        assert json.loads(out)['passed'] is False

    def test_star_sweep(self, capsys):
        code, out, _ = _run(capsys, 'verify', 'star', '--grid', 'small', '--points', '1', '--samples', '1')
        assert code == EXIT_PASS
        data = json.loads(out)
        assert data['details']['points'] == 1
        assert data['samples'] == 4 + 11

    def test_unknown_check(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['verify', 'nothing'])

    def test_bad_field(self, capsys):
        code, _, err = _run(capsys, 'verify', 'cocycle', '--field', '12', '--samples', '1')
        assert code == EXIT_INPUT
        assert '[error]' in err


class TestConfig:
    def test_config_sets_output(self, capsys, tmp_path):
        path = tmp_path / 'settings.json'
        path.write_text(json.dumps({'output': 'table'}))
        try:
            code, out, _ = _run(capsys, 'hyperbolicity', '5', '--config', str(path))
        finally:
            environ.set(output=environ.DEFAULTS['output'])
        assert code == EXIT_PASS
        assert out.splitlines()[0].startswith('N ')

    def test_missing_config(self, capsys, tmp_path):
        code, _, err = _run(capsys, 'hyperbolicity', '5', '--config', str(tmp_path / 'missing.json'))
        assert code == EXIT_INPUT
        assert '[error]' in err


def test_render_table():
    text = render_table({'b': {'c': 1}, 'a': [1, 2]})
    assert text.splitlines() == ['a    [1, 2]', 'b.c  1']
