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
from schurample._errors import PreconditionError, SchurAmpleError


class TestSettings:
    def test_defaults(self):
        assert environ.get('prime') == 2_147_483_647
        assert environ.get('field') == 'Q'

    def test_unknown_key(self):
        with pytest.raises(KeyError):
            environ.get('colour')

    def test_context_restores(self):
        before = environ.get('height')
        with environ.context(height=7):
            assert environ.get('height') == 7
        assert environ.get('height') == before

    def test_set_overrides_default(self):
        try:
            environ.set(samples=5)
            assert environ.get('samples') == 5
        finally:
            environ.set(samples=environ.DEFAULTS['samples'])
        assert environ.get('samples') == 100


class TestLoadConfig:
    def test_installs_values(self, tmp_path):
        path = tmp_path / 'schurample.json'
        path.write_text(json.dumps({'max_retries': 99}))
        try:
            assert environ.load_config(str(path)) == {'max_retries': 99}
            assert environ.get('max_retries') == 99
        finally:
            environ.set(max_retries=environ.DEFAULTS['max_retries'])

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'colour': 'blue'}))
        with pytest.raises(PreconditionError):
            environ.load_config(str(path))

    def test_not_an_object(self, tmp_path):
        path = tmp_path / 'list.json'
        path.write_text('[1, 2]')
        with pytest.raises(SchurAmpleError):
            environ.load_config(str(path))


class TestResolveSeed:
    def test_explicit_wins(self, monkeypatch):
        monkeypatch.setenv(environ.SEED_ENV_VAR, '9')
        assert environ.resolve_seed(5) == 5

    def test_environment_variable(self, monkeypatch):
        monkeypatch.setenv(environ.SEED_ENV_VAR, '9')
        assert environ.resolve_seed() == 9

    def test_configured_default(self, monkeypatch):
        monkeypatch.delenv(environ.SEED_ENV_VAR, raising=False)
        with environ.context(seed=3):
            assert environ.resolve_seed() == 3

    def test_bad_environment_variable(self, monkeypatch):
        monkeypatch.setenv(environ.SEED_ENV_VAR, 'seven')
        with pytest.raises(PreconditionError):
            environ.resolve_seed()
